//! Dense matrix representations on the truncated helicity Fock basis
//! `{|n₊, n₋⟩ : n₊, n₋ ≤ N}`.
//!
//! Basis state `|n₊, n₋⟩` sits at index `n₊(N+1) + n₋`. Products of
//! truncated matrices are exact only away from the cutoff, so checks look at
//! the interior block `n₊, n₋ ≤ N − 2`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::ermakov::{ErmakovError, ErmakovSolution, Frame};
use crate::spectra::ModeIndex;

pub type CMatrix = DMatrix<Complex64>;

/// Largest supported cutoff.
pub const MAX_CUTOFF: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatricesError {
    #[error(transparent)]
    Ermakov(#[from] ErmakovError),
    #[error("cutoff {0} outside 2..=64")]
    Cutoff(usize),
    #[error("mode ({n_plus}, {n_minus}) needs two quanta of margin below cutoff {cutoff}")]
    Margin {
        n_plus: usize,
        n_minus: usize,
        cutoff: usize,
    },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Index of `|n₊, n₋⟩` in a basis with cutoff `n`.
pub fn basis_index(cutoff: usize, mode: ModeIndex) -> usize {
    mode.n_plus * (cutoff + 1) + mode.n_minus
}

/// Indices of the interior block `n₊, n₋ ≤ N − 2`.
pub fn interior_indices(cutoff: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for np in 0..=cutoff.saturating_sub(2) {
        for nm in 0..=cutoff.saturating_sub(2) {
            out.push(basis_index(cutoff, ModeIndex::new(np, nm)));
        }
    }
    out
}

/// Restriction of `m` to the interior block.
pub fn interior_block(m: &CMatrix, cutoff: usize) -> CMatrix {
    let idx = interior_indices(cutoff);
    CMatrix::from_fn(idx.len(), idx.len(), |i, j| m[(idx[i], idx[j])])
}

/// Largest entry magnitude on the interior block.
pub fn interior_max_abs(m: &CMatrix, cutoff: usize) -> f64 {
    let idx = interior_indices(cutoff);
    let mut worst: f64 = 0.0;
    for &i in &idx {
        for &j in &idx {
            worst = worst.max(m[(i, j)].norm());
        }
    }
    worst
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// `a₊` and `a₋` on the truncated basis.
fn lowering(cutoff: usize) -> (CMatrix, CMatrix) {
    let dim = (cutoff + 1) * (cutoff + 1);
    let mut ap = CMatrix::zeros(dim, dim);
    let mut am = CMatrix::zeros(dim, dim);
    for np in 0..=cutoff {
        for nm in 0..=cutoff {
            let col = basis_index(cutoff, ModeIndex::new(np, nm));
            if np > 0 {
                ap[(basis_index(cutoff, ModeIndex::new(np - 1, nm)), col)] = c((np as f64).sqrt());
            }
            if nm > 0 {
                am[(basis_index(cutoff, ModeIndex::new(np, nm - 1)), col)] = c((nm as f64).sqrt());
            }
        }
    }
    (ap, am)
}

/// Every operator of the model at one instant, in the helicity basis built
/// from `ρ(t)` at that instant.
#[derive(Debug, Clone)]
pub struct TruncatedBasisRep {
    pub cutoff: usize,
    pub frame: Frame,
    pub a_plus: CMatrix,
    pub a_minus: CMatrix,
    pub a_plus_dag: CMatrix,
    pub a_minus_dag: CMatrix,
    pub x1: CMatrix,
    pub x2: CMatrix,
    pub p1: CMatrix,
    pub p2: CMatrix,
    pub invariant: CMatrix,
    pub hamiltonian: CMatrix,
    pub lz: CMatrix,
}

/// Coefficient of `a₊a₋` in `Ĥ`:
/// `−mf⁻¹ρ̇²/(2ν) + iρ̇/ρ + fν/(2mρ²) − mω²f⁻¹ρ²/(2ν)`. The coefficient of
/// `a₊†a₋†` is its conjugate.
pub fn hamiltonian_pair_coefficient(fr: &Frame) -> Complex64 {
    let Frame {
        m,
        nu,
        f,
        omega,
        rho,
        rho_dot,
        ..
    } = *fr;
    Complex64::new(
        -m * rho_dot * rho_dot / (f * 2.0 * nu) + f * nu / (2.0 * m * rho * rho)
            - m * omega * omega * rho * rho / (2.0 * f * nu),
        rho_dot / rho,
    )
}

/// Coefficient of `a₊†a₊ + a₋†a₋ + 1` in `Ĥ`.
pub fn hamiltonian_number_coefficient(fr: &Frame) -> f64 {
    let Frame {
        m,
        nu,
        f,
        omega,
        rho,
        rho_dot,
        ..
    } = *fr;
    (m * rho_dot * rho_dot / f + f * nu * nu / (m * rho * rho) + m * omega * omega * rho * rho / f)
        / (2.0 * nu)
}

/// Builds all operator matrices at `t` with cutoff `N`.
pub fn build_rep(
    es: &ErmakovSolution,
    t: f64,
    cutoff: usize,
) -> Result<TruncatedBasisRep, MatricesError> {
    if !(2..=MAX_CUTOFF).contains(&cutoff) {
        return Err(MatricesError::Cutoff(cutoff));
    }
    let fr = es.frame(t)?;
    let (a_plus, a_minus) = lowering(cutoff);
    let a_plus_dag = a_plus.adjoint();
    let a_minus_dag = a_minus.adjoint();
    let dim = a_plus.nrows();
    let id = CMatrix::identity(dim, dim);

    let sq = fr.nu.sqrt();
    let xa = fr.rho / (2.0 * sq);
    let pa = fr.c() / (2.0 * sq);
    let pb = sq / (2.0 * fr.rho);
    let odd1 = &a_minus - &a_plus_dag + &a_plus - &a_minus_dag;
    let even1 = &a_minus + &a_plus_dag + &a_plus + &a_minus_dag;
    let odd2 = &a_minus - &a_plus_dag - &a_plus + &a_minus_dag;
    let even2 = &a_minus + &a_plus_dag - &a_plus - &a_minus_dag;
    let x1 = &odd1 * (-I * xa);
    let p1 = &odd1 * (-I * pa) - &even1 * c(pb);
    let x2 = &odd2 * c(xa);
    let p2 = &odd2 * c(pa) - &even2 * (I * pb);

    let mut n_plus = CMatrix::zeros(dim, dim);
    let mut n_minus = CMatrix::zeros(dim, dim);
    for np in 0..=cutoff {
        for nm in 0..=cutoff {
            let k = basis_index(cutoff, ModeIndex::new(np, nm));
            n_plus[(k, k)] = c(np as f64);
            n_minus[(k, k)] = c(nm as f64);
        }
    }
    let number = &n_plus + &n_minus + &id;
    let invariant = &number * c(fr.nu);
    let lz = &n_minus - &n_plus;
    let pair = hamiltonian_pair_coefficient(&fr);
    let hamiltonian = &number * c(hamiltonian_number_coefficient(&fr))
        + (&a_minus * &a_plus) * pair
        + (&a_minus_dag * &a_plus_dag) * pair.conj();

    Ok(TruncatedBasisRep {
        cutoff,
        frame: fr,
        a_plus,
        a_minus,
        a_plus_dag,
        a_minus_dag,
        x1,
        x2,
        p1,
        p2,
        invariant,
        hamiltonian,
        lz,
    })
}

impl TruncatedBasisRep {
    pub fn dim(&self) -> usize {
        self.a_plus.nrows()
    }

    /// `Ĥ = (f/2m)(p̂₁² + p̂₂²) + (mω²/2f)(x̂₁² + x̂₂²)` from the phase-space
    /// matrices, independent of the ladder form stored in `hamiltonian`.
    pub fn hamiltonian_from_phase_space(&self) -> CMatrix {
        let fr = &self.frame;
        let p2 = &self.p1 * &self.p1 + &self.p2 * &self.p2;
        let x2 = &self.x1 * &self.x1 + &self.x2 * &self.x2;
        p2 * c(fr.f / (2.0 * fr.m)) + x2 * c(fr.m * fr.omega * fr.omega / (2.0 * fr.f))
    }

    /// `x̂₁p̂₂ − x̂₂p̂₁`.
    pub fn lz_from_phase_space(&self) -> CMatrix {
        &self.x1 * &self.p2 - &self.x2 * &self.p1
    }

    /// Invariant built from another instant's coefficients on this basis:
    /// `½Σⱼ[(c′x̂ⱼ − ρ′p̂ⱼ)² + ν²x̂ⱼ²/ρ′²]`.
    pub fn invariant_with(&self, other: &Frame) -> CMatrix {
        let cc = other.c();
        let rho = other.rho;
        let mut out = CMatrix::zeros(self.dim(), self.dim());
        for (x, p) in [(&self.x1, &self.p1), (&self.x2, &self.p2)] {
            let q = x * c(cc) - p * c(rho);
            let xx = x * x;
            out += (&q * &q + xx * c(other.nu * other.nu / (rho * rho))) * c(0.5);
        }
        out
    }

    /// `(Ĵ₊, Ĵ₋, Ĵ₀)` with `Ĵ₊ = (x̂₁²+x̂₂²)/2`, `Ĵ₋ = (p̂₁²+p̂₂²)/2` and
    /// `Ĵ₀ = ½Σⱼ(x̂ⱼp̂ⱼ + p̂ⱼx̂ⱼ)`.
    pub fn j_generators(&self) -> (CMatrix, CMatrix, CMatrix) {
        let jp = (&self.x1 * &self.x1 + &self.x2 * &self.x2) * c(0.5);
        let jm = (&self.p1 * &self.p1 + &self.p2 * &self.p2) * c(0.5);
        let j0 = (&self.x1 * &self.p1
            + &self.p1 * &self.x1
            + &self.x2 * &self.p2
            + &self.p2 * &self.x2)
            * c(0.5);
        (jp, jm, j0)
    }

    /// Hermitian eigenvalues of the interior block of the phase-space
    /// invariant, ascending.
    pub fn invariant_spectrum(&self) -> Vec<f64> {
        let block = interior_block(&self.invariant_with(&self.frame), self.cutoff);
        let mut ev: Vec<f64> = block.symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        ev
    }

    pub fn expectation(&self, op: Observable, mode: ModeIndex) -> Result<Complex64, MatricesError> {
        if mode.n_plus + 2 > self.cutoff || mode.n_minus + 2 > self.cutoff {
            return Err(MatricesError::Margin {
                n_plus: mode.n_plus,
                n_minus: mode.n_minus,
                cutoff: self.cutoff,
            });
        }
        let k = basis_index(self.cutoff, mode);
        let m = self.observable(op);
        Ok(m[(k, k)])
    }

    pub fn observable(&self, op: Observable) -> CMatrix {
        match op {
            Observable::X1 => self.x1.clone(),
            Observable::X2 => self.x2.clone(),
            Observable::P1 => self.p1.clone(),
            Observable::P2 => self.p2.clone(),
            Observable::X1Squared => &self.x1 * &self.x1,
            Observable::X2Squared => &self.x2 * &self.x2,
            Observable::P1Squared => &self.p1 * &self.p1,
            Observable::P2Squared => &self.p2 * &self.p2,
            Observable::Invariant => self.invariant.clone(),
            Observable::Hamiltonian => self.hamiltonian.clone(),
            Observable::Lz => self.lz.clone(),
        }
    }

    /// `(∂a₊†/∂t, ∂a₋†/∂t)` from the closed-form coefficient
    /// `κ = (imf⁻¹/2ν)(ρ̈ρ + ηρ̇ρ − ρ̇²)`:
    /// `∂a₊†/∂t = κ a₊† + (ρ̇/ρ − κ) a₋` and likewise with `+ ↔ −`.
    pub fn ladder_rates(&self, rho_ddot: f64) -> (CMatrix, CMatrix) {
        let fr = &self.frame;
        let kappa = I * (fr.m / (2.0 * fr.nu * fr.f))
            * (rho_ddot * fr.rho + fr.eta * fr.rho_dot * fr.rho - fr.rho_dot * fr.rho_dot);
        let other = c(fr.rho_dot / fr.rho) - kappa;
        (
            &self.a_plus_dag * kappa + &self.a_minus * other,
            &self.a_minus_dag * kappa + &self.a_plus * other,
        )
    }

    /// `(a₊†, a₋†)` for another instant's coefficients, on this basis.
    pub fn raising_with(&self, other: &Frame) -> (CMatrix, CMatrix) {
        let k = 1.0 / (2.0 * other.nu.sqrt());
        let coeff = Complex64::new(other.c(), -other.nu / other.rho) * k;
        let xm = &self.x1 - &self.x2 * I;
        let xp = &self.x1 + &self.x2 * I;
        let pm = &self.p1 - &self.p2 * I;
        let pp = &self.p1 + &self.p2 * I;
        (
            xm * coeff - pm * c(other.rho * k),
            xp * coeff - pp * c(other.rho * k),
        )
    }
}

/// Operators available to [`TruncatedBasisRep::expectation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    X1,
    X2,
    P1,
    P2,
    X1Squared,
    X2Squared,
    P1Squared,
    P2Squared,
    Invariant,
    Hamiltonian,
    Lz,
}

/// Max interior entry of `∂Î/∂t + (1/i)[Î, Ĥ]` over that of `Î`.
///
/// `∂Î/∂t` is a centered difference of the invariant built from
/// `ρ(t ± Δt)` on the fixed basis at `t`; `Ĥ` is the ladder form.
pub fn invariance_residual(
    es: &ErmakovSolution,
    t: f64,
    dt: f64,
    cutoff: usize,
) -> Result<f64, MatricesError> {
    if !(dt > 0.0) {
        return Err(MatricesError::Invalid(format!("time step must be positive, got {dt}")));
    }
    let rep = build_rep(es, t, cutoff)?;
    let fwd = rep.invariant_with(&es.frame(t + dt)?);
    let bwd = rep.invariant_with(&es.frame(t - dt)?);
    let d_inv = (fwd - bwd) * c(0.5 / dt);
    Ok(residual_ratio(&rep, &d_inv))
}

fn residual_ratio(rep: &TruncatedBasisRep, d_inv: &CMatrix) -> f64 {
    let inv = rep.invariant_with(&rep.frame);
    let res = d_inv + commutator(&inv, &rep.hamiltonian) * (-I);
    interior_max_abs(&res, rep.cutoff) / interior_max_abs(&inv, rep.cutoff)
}

/// `[α, β, δ]` with `Î = ½Σⱼ[αx̂ⱼ² + βp̂ⱼ² + δ(x̂ⱼp̂ⱼ + p̂ⱼx̂ⱼ)]`:
/// `α = ν²/ρ² + m²f⁻²ρ̇²`, `β = ρ²`, `δ = −mf⁻¹ρ̇ρ`.
pub fn invariant_coefficients(fr: &Frame) -> [f64; 3] {
    let cc = fr.c();
    [
        fr.nu * fr.nu / (fr.rho * fr.rho) + cc * cc,
        fr.rho * fr.rho,
        -cc * fr.rho,
    ]
}

/// Time derivatives of `[α, β, δ]` required for `dÎ/dt = 0`.
pub fn coefficient_rates(fr: &Frame) -> [f64; 3] {
    let [a, b, d] = invariant_coefficients(fr);
    let w2 = fr.omega * fr.omega;
    [
        2.0 * fr.m * w2 * d / fr.f,
        -2.0 * fr.f * d / fr.m,
        -fr.f * a / fr.m + fr.m * w2 * b / fr.f,
    ]
}

/// Largest relative mismatch between [`coefficient_rates`] and centered
/// differences of [`invariant_coefficients`] along `ρ(t)`. This is the
/// analytic route to `dÎ/dt = 0`: the rates are exactly those that cancel
/// the commutator with `Ĥ`, so they match the actual derivatives only when
/// `ρ` solves the auxiliary equation.
pub fn coefficient_rate_mismatch(es: &ErmakovSolution, t: f64, dt: f64) -> Result<f64, MatricesError> {
    let fr = es.frame(t)?;
    let fwd = invariant_coefficients(&es.frame(t + dt)?);
    let bwd = invariant_coefficients(&es.frame(t - dt)?);
    let rates = coefficient_rates(&fr);
    let scale = invariant_coefficients(&fr)
        .iter()
        .chain(rates.iter())
        .fold(0.0f64, |s, v| s.max(v.abs()));
    let mut worst: f64 = 0.0;
    for k in 0..3 {
        let fd = (fwd[k] - bwd[k]) / (2.0 * dt);
        worst = worst.max((fd - rates[k]).abs() / scale);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::OscillatorConfig;

    #[test]
    fn basis_layout() {
        assert_eq!(basis_index(4, ModeIndex::new(0, 0)), 0);
        assert_eq!(basis_index(4, ModeIndex::new(1, 2)), 7);
        assert_eq!(interior_indices(3).len(), 4);
    }

    #[test]
    fn rejects_bad_cutoff() {
        let cfg = OscillatorConfig::static_oscillator(1.0, 1.0, 1.0).unwrap();
        let es = ErmakovSolution::solve_static(&cfg).unwrap();
        assert!(matches!(build_rep(&es, 0.0, 1), Err(MatricesError::Cutoff(1))));
        assert!(matches!(build_rep(&es, 0.0, 65), Err(MatricesError::Cutoff(65))));
        let rep = build_rep(&es, 0.0, 4).unwrap();
        assert!(rep.expectation(Observable::X1, ModeIndex::new(3, 0)).is_err());
    }
}
