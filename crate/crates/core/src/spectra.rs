//! Invariant eigenvalues, eigenfunctions, the Lewis–Riesenfeld phase and the
//! resulting Schrödinger solutions.
//!
//! Eigenfunctions carry the angular factor `e^{iℓα}` with `ℓ = n₊ − n₋`,
//! while the operator `L̂z = a₋†a₋ − a₊†a₊` has eigenvalue `n₋ − n₊` on the
//! same state. The two labels differ by a sign; [`ModeIndex::ell`] is the
//! eigenfunction label and [`angular_momentum_eigenvalue`] the operator value.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::ermakov::{ErmakovError, ErmakovSolution, Frame};
use crate::specfn::{
    gauss_laguerre_rule, gauss_legendre_rule, hermite, integrate_adaptive, laguerre, ln_factorial,
    ln_gamma, trapezoid_rule, SpecFnError,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectraError {
    #[error(transparent)]
    Ermakov(#[from] ErmakovError),
    #[error(transparent)]
    SpecFn(#[from] SpecFnError),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

/// Helicity occupation numbers `(n₊, n₋)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeIndex {
    pub n_plus: usize,
    pub n_minus: usize,
}

impl ModeIndex {
    pub fn new(n_plus: usize, n_minus: usize) -> Self {
        ModeIndex { n_plus, n_minus }
    }

    /// Builds the mode with radial number `n` and angular label `ℓ`.
    pub fn from_radial(n: usize, ell: i64) -> Self {
        let a = ell.unsigned_abs() as usize;
        if ell >= 0 {
            ModeIndex::new(n + a, n)
        } else {
            ModeIndex::new(n, n + a)
        }
    }

    /// `ℓ = n₊ − n₋`.
    pub fn ell(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }

    /// `n = min(n₊, n₋)`.
    pub fn n(&self) -> usize {
        self.n_plus.min(self.n_minus)
    }

    /// `n₊ + n₋`.
    pub fn total(&self) -> usize {
        self.n_plus + self.n_minus
    }

    /// All modes with `n₊ + n₋ ≤ max_total`, ordered by total then `n₊`.
    pub fn up_to(max_total: usize) -> Vec<ModeIndex> {
        let mut out = Vec::new();
        for total in 0..=max_total {
            for n_plus in 0..=total {
                out.push(ModeIndex::new(n_plus, total - n_plus));
            }
        }
        out
    }
}

/// Cartesian occupation numbers `(n₁, n₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CartesianIndex {
    pub n1: usize,
    pub n2: usize,
}

impl CartesianIndex {
    pub fn new(n1: usize, n2: usize) -> Self {
        CartesianIndex { n1, n2 }
    }
}

/// `ν(n₊ + n₋ + 1)`.
pub fn invariant_eigenvalue(nu: f64, mode: ModeIndex) -> f64 {
    nu * (mode.total() + 1) as f64
}

/// `n₋ − n₊`.
pub fn angular_momentum_eigenvalue(mode: ModeIndex) -> i64 {
    mode.n_minus as i64 - mode.n_plus as i64
}

/// `⟨Ĥ⟩ = (mf⁻¹ρ̇² + fν²/(mρ²) + mω²f⁻¹ρ²)(n₊+n₋+1)/(2ν)`.
pub fn hamiltonian_expectation(
    es: &ErmakovSolution,
    mode: ModeIndex,
    t: f64,
) -> Result<f64, SpectraError> {
    Ok(hamiltonian_expectation_frame(&es.frame(t)?, mode))
}

pub(crate) fn hamiltonian_expectation_frame(fr: &Frame, mode: ModeIndex) -> f64 {
    let Frame {
        m,
        nu,
        f,
        omega,
        rho,
        rho_dot,
        ..
    } = *fr;
    let bracket = m * rho_dot * rho_dot / f + f * nu * nu / (m * rho * rho)
        + m * omega * omega * rho * rho / f;
    bracket * (mode.total() + 1) as f64 / (2.0 * nu)
}

/// Expected mechanical energy `f(t)⟨Ĥ⟩`.
pub fn mechanical_energy_expectation(
    es: &ErmakovSolution,
    mode: ModeIndex,
    t: f64,
) -> Result<f64, SpectraError> {
    let fr = es.frame(t)?;
    Ok(fr.f * hamiltonian_expectation_frame(&fr, mode))
}

/// `∫_a^b f/ρ² dt′` by adaptive Gauss–Kronrod with absolute error `tol`.
pub fn phase_integral(es: &ErmakovSolution, a: f64, b: f64, tol: f64) -> Result<f64, SpectraError> {
    if !(tol > 0.0) {
        return Err(SpectraError::Invalid(format!("tolerance must be positive, got {tol}")));
    }
    es.rho(a)?;
    es.rho(b)?;
    es.cfg().check_span(a.min(b), a.max(b)).map_err(ErmakovError::from)?;
    if a == b {
        return Ok(0.0);
    }
    let cfg = es.cfg();
    let integral = integrate_adaptive(
        |s| {
            let rho = es.jet(s)[0];
            cfg.f_at(s) / (rho * rho)
        },
        a,
        b,
        tol,
        0.0,
    )?;
    Ok(integral.value)
}

/// Lewis–Riesenfeld phase `θ(t) = −(ν/m)(n₊+n₋+1)∫₀ᵗ f/ρ² dt′`.
///
/// `tol` bounds the absolute error of `θ`, not of the integral.
pub fn lr_phase(
    es: &ErmakovSolution,
    mode: ModeIndex,
    t: f64,
    tol: f64,
) -> Result<f64, SpectraError> {
    if !(t >= 0.0) {
        return Err(SpectraError::Invalid(format!("phase needs t >= 0, got {t}")));
    }
    let rate = phase_rate(es, mode);
    Ok(-rate * phase_integral(es, 0.0, t, tol / rate)?)
}

/// `(ν/m)(n₊+n₋+1)`, the factor multiplying `∫f/ρ²` in the phase.
fn phase_rate(es: &ErmakovSolution, mode: ModeIndex) -> f64 {
    let cfg = es.cfg();
    cfg.nu / cfg.m * (mode.total() + 1) as f64
}

/// `exp[i m f⁻¹ ρ̇ r²/(2ρ)]`.
fn chirp(fr: &Frame, r2: f64) -> Complex64 {
    Complex64::from_polar(1.0, 0.5 * fr.c() * r2 / fr.rho)
}

/// `√(n!/Γ(n+a+1)) u^{a/2} e^{−u/2} L_n^a(u)`, the real radial profile in `u`.
pub(crate) fn radial_profile(n: usize, a: usize, u: f64) -> f64 {
    let l = laguerre(n, a as f64, u);
    if u == 0.0 {
        return if a == 0 {
            (0.5 * (ln_factorial(n) - ln_gamma((n + a + 1) as f64))).exp() * l
        } else {
            0.0
        };
    }
    let log_mag = 0.5 * (ln_factorial(n) - ln_gamma((n + a + 1) as f64)) + 0.5 * a as f64 * u.ln()
        - 0.5 * u;
    log_mag.exp() * l
}

pub(crate) fn polar_value(fr: &Frame, mode: ModeIndex, r: f64, alpha: f64) -> Complex64 {
    let n = mode.n();
    let a = mode.ell().unsigned_abs() as usize;
    let r2 = r * r;
    let u = fr.nu * r2 / (fr.rho * fr.rho);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let amp = sign * fr.nu.sqrt() / (fr.rho * PI.sqrt()) * radial_profile(n, a, u);
    let angle = Complex64::from_polar(1.0, mode.ell() as f64 * alpha);
    chirp(fr, r2) * angle * amp
}

fn cartesian_value(fr: &Frame, idx: CartesianIndex, x1: f64, x2: f64) -> Complex64 {
    let s = fr.nu.sqrt() / fr.rho;
    let (n1, n2) = (idx.n1, idx.n2);
    let log_norm = 0.5
        * (fr.nu.ln()
            - (n1 + n2) as f64 * std::f64::consts::LN_2
            - PI.ln()
            - ln_factorial(n1)
            - ln_factorial(n2))
        - fr.rho.ln();
    let r2 = x1 * x1 + x2 * x2;
    let amp = (log_norm - 0.5 * s * s * r2).exp() * hermite(n1, s * x1) * hermite(n2, s * x2);
    chirp(fr, r2) * amp
}

/// Cartesian invariant eigenfunction `φ_{n₁,n₂}(x₁, x₂, t)`.
pub fn eigenfunction_cartesian(
    es: &ErmakovSolution,
    idx: CartesianIndex,
    x1: f64,
    x2: f64,
    t: f64,
) -> Result<Complex64, SpectraError> {
    Ok(cartesian_value(&es.frame(t)?, idx, x1, x2))
}

/// Helicity invariant eigenfunction
/// `(−1)ⁿ (√ν/(ρ√π)) √(n!/Γ(n+|ℓ|+1)) u^{|ℓ|/2} e^{−ϖu/2} L_n^{|ℓ|}(u) e^{iℓα}`
/// with `u = νr²/ρ²`.
pub fn eigenfunction_polar(
    es: &ErmakovSolution,
    mode: ModeIndex,
    r: f64,
    alpha: f64,
    t: f64,
) -> Result<Complex64, SpectraError> {
    if !(r >= 0.0) {
        return Err(SpectraError::Invalid(format!("radius must be nonnegative, got {r}")));
    }
    Ok(polar_value(&es.frame(t)?, mode, r, alpha))
}

/// `ψ = e^{iθ(t)} φ`.
pub fn schrodinger_solution(
    es: &ErmakovSolution,
    mode: ModeIndex,
    r: f64,
    alpha: f64,
    t: f64,
    tol: f64,
) -> Result<Complex64, SpectraError> {
    let phi = eigenfunction_polar(es, mode, r, alpha, t)?;
    let theta = lr_phase(es, mode, t, tol)?;
    Ok(phi * Complex64::from_polar(1.0, theta))
}

/// Tensor polar grid: radial nodes with `dr` weights and equally spaced angles.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarGrid {
    /// Outer edge of the radial interval.
    pub r_max: f64,
    pub radii: Vec<f64>,
    pub radial_weights: Vec<f64>,
    pub angles: Vec<f64>,
}

impl PolarGrid {
    /// Composite Gauss–Legendre on `[0, r_max]` with `panels × order` nodes.
    pub fn gauss_legendre(
        r_max: f64,
        panels: usize,
        order: usize,
        n_angles: usize,
    ) -> Result<Self, SpectraError> {
        if !(r_max > 0.0) || panels == 0 || n_angles == 0 {
            return Err(SpectraError::Invalid("empty polar grid".into()));
        }
        let rule = gauss_legendre_rule(order)?;
        let h = r_max / panels as f64;
        let mut radii = Vec::with_capacity(panels * order);
        let mut radial_weights = Vec::with_capacity(panels * order);
        for p in 0..panels {
            let mid = (p as f64 + 0.5) * h;
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                radii.push(mid + 0.5 * h * x);
                radial_weights.push(0.5 * h * w);
            }
        }
        Ok(PolarGrid {
            r_max,
            radii,
            radial_weights,
            angles: uniform_angles(n_angles),
        })
    }

    /// `n_radii` equally spaced radii on `[0, r_max]` with trapezoid weights.
    pub fn uniform(r_max: f64, n_radii: usize, n_angles: usize) -> Result<Self, SpectraError> {
        if !(r_max > 0.0) || n_radii < 2 || n_angles == 0 {
            return Err(SpectraError::Invalid("empty polar grid".into()));
        }
        let radii: Vec<f64> = (0..n_radii)
            .map(|k| r_max * k as f64 / (n_radii - 1) as f64)
            .collect();
        let rule = trapezoid_rule(&radii)?;
        Ok(PolarGrid {
            r_max,
            radii,
            radial_weights: rule.weights,
            angles: uniform_angles(n_angles),
        })
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn uniform_angles(n: usize) -> Vec<f64> {
    (0..n).map(|k| 2.0 * PI * k as f64 / n as f64).collect()
}

/// Uniform square grid of `n × n` cell centres on `[−half_width, half_width]²`.
#[derive(Debug, Clone, PartialEq)]
pub struct CartesianGrid {
    pub half_width: f64,
    pub n: usize,
}

impl CartesianGrid {
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    pub fn coordinate(&self, k: usize) -> f64 {
        -self.half_width + (k as f64 + 0.5) * self.spacing()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SampleGrid {
    Polar(PolarGrid),
    Cartesian(CartesianGrid),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModeLabel {
    Helicity(ModeIndex),
    Cartesian(CartesianIndex),
}

/// Wavefunction values on a grid. Polar values are stored radius-major
/// (`values[i * angles.len() + j]` at `radii[i]`, `angles[j]`); Cartesian
/// values row-major in `x₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveSample {
    pub grid: SampleGrid,
    pub values: Vec<Complex64>,
    pub t: f64,
    pub mode: ModeLabel,
    /// Standard radius `ρ/√ν` at `t`.
    pub sigma: f64,
}

impl WaveSample {
    /// Samples `ψ = e^{iθ}φ` of a helicity mode on a polar grid.
    pub fn polar(
        es: &ErmakovSolution,
        mode: ModeIndex,
        grid: PolarGrid,
        t: f64,
        tol: f64,
    ) -> Result<Self, SpectraError> {
        let fr = es.frame(t)?;
        let phase = Complex64::from_polar(1.0, lr_phase(es, mode, t, tol)?);
        let mut values = Vec::with_capacity(grid.len());
        for &r in &grid.radii {
            for &a in &grid.angles {
                values.push(phase * polar_value(&fr, mode, r, a));
            }
        }
        Ok(WaveSample {
            grid: SampleGrid::Polar(grid),
            values,
            t,
            mode: ModeLabel::Helicity(mode),
            sigma: fr.sigma(),
        })
    }

    /// Samples a Cartesian eigenfunction (without phase) on a square grid.
    pub fn cartesian(
        es: &ErmakovSolution,
        idx: CartesianIndex,
        grid: CartesianGrid,
        t: f64,
    ) -> Result<Self, SpectraError> {
        let fr = es.frame(t)?;
        let mut values = Vec::with_capacity(grid.n * grid.n);
        for i in 0..grid.n {
            for j in 0..grid.n {
                values.push(cartesian_value(&fr, idx, grid.coordinate(i), grid.coordinate(j)));
            }
        }
        Ok(WaveSample {
            grid: SampleGrid::Cartesian(grid),
            values,
            t,
            mode: ModeLabel::Cartesian(idx),
            sigma: fr.sigma(),
        })
    }
}

/// Result of [`norm_check`]; `covered` is false when the grid reaches less
/// than eight standard radii or has fewer than 256 radial points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormCheck {
    pub value: f64,
    pub covered: bool,
}

/// `∫|ψ|² dA` over the sample grid.
pub fn norm_check(ws: &WaveSample) -> NormCheck {
    match &ws.grid {
        SampleGrid::Polar(g) => {
            let na = g.angles.len();
            let dalpha = 2.0 * PI / na as f64;
            let mut total = 0.0;
            for (i, (&r, &w)) in g.radii.iter().zip(&g.radial_weights).enumerate() {
                let ring: f64 = ws.values[i * na..(i + 1) * na]
                    .iter()
                    .map(|v| v.norm_sqr())
                    .sum();
                total += w * r * ring * dalpha;
            }
            NormCheck {
                value: total,
                covered: g.r_max >= 8.0 * ws.sigma * (1.0 - 1e-12) && g.radii.len() >= 256,
            }
        }
        SampleGrid::Cartesian(g) => {
            let h = g.spacing();
            let total: f64 = ws.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * h * h;
            NormCheck {
                value: total,
                covered: g.half_width >= 8.0 * ws.sigma * (1.0 - 1e-12) && g.n >= 256,
            }
        }
    }
}

/// Gram matrix `⟨φ_a|φ_b⟩` of polar eigenfunctions at time `t`.
///
/// The radial integral uses `r dr = (ρ²/2ν) du` and a 64-point Gauss–Laguerre
/// rule with its `e^{−u}` weight divided back out; the angular integral uses
/// an equally spaced rule exact for the angular differences present.
pub fn gram_matrix(
    es: &ErmakovSolution,
    modes: &[ModeIndex],
    t: f64,
) -> Result<DMatrix<Complex64>, SpectraError> {
    let fr = es.frame(t)?;
    let rule = gauss_laguerre_rule(64, 0.0)?;
    let max_ell = modes.iter().map(|m| m.ell().unsigned_abs()).max().unwrap_or(0) as usize;
    let angles = uniform_angles(2 * max_ell + 2);
    let dalpha = 2.0 * PI / angles.len() as f64;
    let jac = fr.rho * fr.rho / (2.0 * fr.nu);
    let k = modes.len();
    let mut gram = DMatrix::<Complex64>::zeros(k, k);
    for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
        let r = fr.sigma() * u.sqrt();
        let weight = w * u.exp() * jac * dalpha;
        for &alpha in &angles {
            let vals: Vec<Complex64> = modes
                .iter()
                .map(|&m| polar_value(&fr, m, r, alpha))
                .collect();
            for a in 0..k {
                for b in 0..k {
                    gram[(a, b)] += vals[a].conj() * vals[b] * weight;
                }
            }
        }
    }
    Ok(gram)
}

/// Settings for [`schrodinger_residual`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualOptions {
    /// Points per axis.
    pub grid: usize,
    /// Half-width of the square in standard radii.
    pub half_width_sigmas: f64,
    /// Centered time step.
    pub dt: f64,
}

impl Default for ResidualOptions {
    fn default() -> Self {
        ResidualOptions {
            grid: 256,
            half_width_sigmas: 8.0,
            dt: 1e-4,
        }
    }
}

/// Sixth-order central second-difference weights for offsets `−3..=3`.
const D2_STENCIL: [f64; 7] = [
    1.0 / 90.0,
    -3.0 / 20.0,
    3.0 / 2.0,
    -49.0 / 18.0,
    3.0 / 2.0,
    -3.0 / 20.0,
    1.0 / 90.0,
];

/// Relative residual `‖i∂ψ/∂t − Ĥψ‖ / ‖ψ‖` of the Schrödinger solution at `t`.
///
/// `∂/∂t` is a centered difference and the Laplacian a sixth-order finite
/// difference on a square grid; norms run over points at least three cells
/// from the boundary.
pub fn schrodinger_residual(
    es: &ErmakovSolution,
    mode: ModeIndex,
    t: f64,
    opts: ResidualOptions,
) -> Result<f64, SpectraError> {
    let n = opts.grid;
    if n < 16 || !(opts.dt > 0.0) || !(opts.half_width_sigmas > 0.0) {
        return Err(SpectraError::Invalid("residual grid or time step too small".into()));
    }
    let dt = opts.dt;
    let rate = phase_rate(es, mode);
    let theta = lr_phase(es, mode, t, 1e-13)?;
    let theta_fwd = theta - rate * phase_integral(es, t, t + dt, 1e-16)?;
    let theta_bwd = theta + rate * phase_integral(es, t - dt, t, 1e-16)?;
    let frames = [es.frame(t - dt)?, es.frame(t)?, es.frame(t + dt)?];
    let phases = [theta_bwd, theta, theta_fwd];
    let fr = frames[1];
    let grid = CartesianGrid {
        half_width: opts.half_width_sigmas * fr.sigma(),
        n,
    };
    let h = grid.spacing();
    let sample = |k: usize| -> Vec<Complex64> {
        let e = Complex64::from_polar(1.0, phases[k]);
        let mut v = Vec::with_capacity(n * n);
        for i in 0..n {
            let x1 = grid.coordinate(i);
            for j in 0..n {
                let x2 = grid.coordinate(j);
                let r = x1.hypot(x2);
                v.push(e * polar_value(&frames[k], mode, r, x2.atan2(x1)));
            }
        }
        v
    };
    let (bwd, mid, fwd) = (sample(0), sample(1), sample(2));
    let kinetic = fr.f / (2.0 * fr.m);
    let potential = fr.m * fr.omega * fr.omega / (2.0 * fr.f);
    let mut res2 = 0.0;
    let mut norm2 = 0.0;
    for i in 3..n - 3 {
        let x1 = grid.coordinate(i);
        for j in 3..n - 3 {
            let x2 = grid.coordinate(j);
            let mut lap = Complex64::new(0.0, 0.0);
            for (s, &c) in D2_STENCIL.iter().enumerate() {
                lap += c * (mid[(i + s - 3) * n + j] + mid[i * n + j + s - 3]);
            }
            lap /= h * h;
            let psi = mid[i * n + j];
            let h_psi = -kinetic * lap + potential * (x1 * x1 + x2 * x2) * psi;
            let dpsi = (fwd[i * n + j] - bwd[i * n + j]) / (2.0 * dt);
            res2 += (Complex64::i() * dpsi - h_psi).norm_sqr();
            norm2 += psi.norm_sqr();
        }
    }
    Ok((res2 / norm2).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::OscillatorConfig;

    fn unit_static() -> ErmakovSolution {
        ErmakovSolution::solve_static(&OscillatorConfig::static_oscillator(1.0, 1.0, 1.0).unwrap())
            .unwrap()
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(invariant_eigenvalue(1.0, ModeIndex::new(0, 0)), 1.0);
        assert_eq!(invariant_eigenvalue(2.0, ModeIndex::new(1, 2)), 8.0);
        assert_eq!(invariant_eigenvalue(1.0, ModeIndex::new(3, 0)), 4.0);
        assert_eq!(angular_momentum_eigenvalue(ModeIndex::new(2, 2)), 0);
        assert_eq!(angular_momentum_eigenvalue(ModeIndex::new(0, 2)), 2);
        assert_eq!(angular_momentum_eigenvalue(ModeIndex::new(3, 1)), -2);
    }

    #[test]
    fn mode_index_identities() {
        for m in ModeIndex::up_to(6) {
            assert_eq!(2 * m.n() + m.ell().unsigned_abs() as usize, m.total());
            assert_eq!(ModeIndex::from_radial(m.n(), m.ell()), m);
        }
    }

    #[test]
    fn static_energy_examples() {
        let es = unit_static();
        let e0 = hamiltonian_expectation(&es, ModeIndex::new(0, 0), 3.0).unwrap();
        let e2 = hamiltonian_expectation(&es, ModeIndex::new(1, 1), 0.2).unwrap();
        assert!((e0 - 1.0).abs() < 1e-15);
        assert!((e2 - 3.0).abs() < 1e-15);
    }

    #[test]
    fn eigenfunction_point_values() {
        let es = unit_static();
        let g = eigenfunction_cartesian(&es, CartesianIndex::new(0, 0), 0.0, 0.0, 0.0).unwrap();
        assert!((g.re - PI.powf(-0.5)).abs() < 1e-15 && g.im == 0.0);
        let z = eigenfunction_cartesian(&es, CartesianIndex::new(1, 0), 0.0, 0.7, 0.0).unwrap();
        assert_eq!(z.norm(), 0.0);
        let g1 = eigenfunction_cartesian(&es, CartesianIndex::new(0, 0), 1.0, 0.0, 0.0).unwrap();
        assert!((g1.re - PI.powf(-0.5) * (-0.5f64).exp()).abs() < 1e-15);
        let p = eigenfunction_polar(&es, ModeIndex::new(0, 0), 0.0, 0.3, 0.0).unwrap();
        assert!((p.re - PI.powf(-0.5)).abs() < 1e-15);
        let p = eigenfunction_polar(&es, ModeIndex::new(2, 1), 0.0, 0.3, 0.0).unwrap();
        assert_eq!(p.norm(), 0.0);
        let p = eigenfunction_polar(&es, ModeIndex::new(1, 0), 1.0, 0.0, 0.0).unwrap();
        assert!((p.re - PI.powf(-0.5) * (-0.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn phase_is_zero_at_start_and_decreasing() {
        let cfg = OscillatorConfig::caldirola_kanai(1.0, 1.0, 1.0, 1.0).unwrap();
        let es = ErmakovSolution::solve_caldirola_kanai(&cfg).unwrap();
        let mode = ModeIndex::new(1, 0);
        assert_eq!(lr_phase(&es, mode, 0.0, 1e-12).unwrap(), 0.0);
        let mut last = 0.0;
        for k in 1..10 {
            let th = lr_phase(&es, mode, 0.3 * k as f64, 1e-12).unwrap();
            assert!(th < last);
            last = th;
        }
    }

    #[test]
    fn norm_of_scaled_state_is_quadratic() {
        let es = unit_static();
        let grid = PolarGrid::gauss_legendre(8.0, 32, 8, 8).unwrap();
        let mut ws = WaveSample::polar(&es, ModeIndex::new(0, 0), grid, 0.0, 1e-12).unwrap();
        let nc = norm_check(&ws);
        assert!(nc.covered);
        assert!((nc.value - 1.0).abs() < 1e-8);
        for v in &mut ws.values {
            *v *= 2.0;
        }
        assert!((norm_check(&ws).value - 4.0).abs() < 1e-7);
    }

    #[test]
    fn short_grid_is_flagged() {
        let es = unit_static();
        let grid = PolarGrid::gauss_legendre(4.0, 32, 8, 8).unwrap();
        let ws = WaveSample::polar(&es, ModeIndex::new(0, 0), grid, 0.0, 1e-12).unwrap();
        assert!(!norm_check(&ws).covered);
    }
}
