//! Barut–Girardello and Perelomov SU(1,1) coherent states over the radial
//! basis of [`crate::su11`].
//!
//! Conventions fixed by normalization and by the su(1,1) action:
//! - Barut–Girardello: `cₙ = zⁿ / √(n!Γ(n+ℓ+1) S_ℓ(|z|²))` with
//!   `S_ℓ(x²) = I_ℓ(2x)/x^ℓ`, and
//!   `⟨z₁|z₂⟩ = |z₁z₂|^{ℓ/2} S_ℓ(z₁*z₂) / √(I_ℓ(2|z₁|) I_ℓ(2|z₂|))`.
//! - Perelomov: `cₙ = (1−|η|²)^{(ℓ+1)/2} √(Γ(n+ℓ+1)/(n!Γ(ℓ+1))) ηⁿ` and
//!   `⟨η₁|η₂⟩ = [(1−|η₁|²)(1−|η₂|²)]^{(ℓ+1)/2} (1−η₁*η₂)^{−ℓ−1}`.
//!
//! Time dependence enters through the per-term phases
//! `θ_{n,ℓ}(t) = (2n+ℓ+1)θ₁(t)`, so the generating-function closed forms are
//! only offered at `t = 0`.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::ermakov::{ErmakovError, ErmakovSolution, Frame};
use crate::specfn::{bessel_k, bessel_sum, integrate_adaptive, ln_factorial, ln_gamma, SpecFnError};
use crate::spectra::{lr_phase, ModeIndex, SpectraError};
use crate::su11::{basis_function, RadialState};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoherentError {
    #[error(transparent)]
    SpecFn(#[from] SpecFnError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Ermakov(#[from] ErmakovError),
    #[error("truncation: {0}")]
    Truncation(String),
    #[error("perelomov parameter |eta| = {0} must be below 1 - 1e-9")]
    OutsideDisk(f64),
    #[error("states have different ell ({0} vs {1})")]
    EllMismatch(u32, u32),
    #[error("closed form only valid at t = 0, got t = {0}")]
    ClosedFormTime(f64),
    #[error("perelomov measure is not normalizable at ell = 0")]
    DivergentMeasure,
    #[error("invalid argument: {0}")]
    Invalid(String),
}

/// Largest number of retained terms.
pub const MAX_TERMS: usize = 512;

/// Dropped tail of `Σ|cₙ|²` must stay below this.
pub const TAIL_TOLERANCE: f64 = 1e-14;

/// Tail aimed for when [`MAX_TERMS`] allows it; pointwise values then carry
/// truncation errors near `√TAIL_TARGET`.
pub const TAIL_TARGET: f64 = 1e-24;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    BarutGirardello { z: Complex64 },
    Perelomov { eta: Complex64 },
}

/// Truncated coefficient vector `c₀..c_N` in the radial basis at fixed `ℓ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentExpansion {
    pub family: Family,
    pub ell: u32,
    pub coefficients: Vec<Complex64>,
    /// Bound on the dropped `Σ_{n>N}|cₙ|²`.
    pub tail_bound: f64,
}

impl CoherentExpansion {
    pub fn norm_sqr(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn truncation(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn to_radial_state(&self) -> RadialState {
        let mut s = RadialState::zero(self.ell);
        for (n, &c) in self.coefficients.iter().enumerate() {
            s.coefficients.insert(n, c);
        }
        s
    }

    /// `Σ conj(aₙ) bₙ` over the common range.
    pub fn inner(&self, other: &CoherentExpansion) -> Result<Complex64, CoherentError> {
        if self.ell != other.ell {
            return Err(CoherentError::EllMismatch(self.ell, other.ell));
        }
        Ok(self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

fn ln_gamma_ell(n: usize, ell: u32) -> f64 {
    ln_gamma((n + ell as usize + 1) as f64)
}

/// Stable `ln Σ exp(xᵢ)`.
fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + xs.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// Collects `ln|cₙ|²` until the geometric tail bound drops below tolerance.
/// `ratio(n)` is `|c_{n+1}|²/|cₙ|²` and must be non-increasing once below 1.
fn collect_terms(
    log_first: f64,
    ratio: impl Fn(usize) -> f64,
    what: &str,
) -> Result<(Vec<f64>, f64), CoherentError> {
    let mut logs = vec![log_first];
    loop {
        let n = logs.len() - 1;
        let r = ratio(n);
        let next = logs[n] + r.ln();
        let total = log_sum_exp(&logs);
        // Σ_{k>n}|c_k|² ≤ |c_{n+1}|²/(1−r') with r' the next ratio.
        let r_next = ratio(n + 1);
        if r_next < 1.0 {
            let tail = (next - total).exp() / (1.0 - r_next);
            if tail < TAIL_TARGET || r == 0.0 {
                return Ok((logs, tail));
            }
            if logs.len() == MAX_TERMS && tail < TAIL_TOLERANCE {
                return Ok((logs, tail));
            }
        }
        if logs.len() >= MAX_TERMS {
            return Err(CoherentError::Truncation(format!(
                "{what}: tail bound not reached within {MAX_TERMS} terms"
            )));
        }
        logs.push(next);
    }
}

/// Barut–Girardello expansion for eigenvalue `z` of `K₋`.
pub fn bg_expand(z: Complex64, ell: u32) -> Result<CoherentExpansion, CoherentError> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(CoherentError::Invalid(format!("z must be finite, got {z}")));
    }
    let family = Family::BarutGirardello { z };
    if z == Complex64::new(0.0, 0.0) {
        return Ok(CoherentExpansion {
            family,
            ell,
            coefficients: vec![Complex64::new(1.0, 0.0)],
            tail_bound: 0.0,
        });
    }
    let a2 = z.norm_sqr();
    let l = ell as f64;
    let ratio = |n: usize| a2 / ((n as f64 + 1.0) * (n as f64 + l + 1.0));
    // ln of zⁿ²/(n!Γ(n+ℓ+1)) before normalization
    let (logs, tail) = collect_terms(-ln_gamma_ell(0, ell), ratio, "barut-girardello")?;
    let log_norm = log_sum_exp(&logs);
    let arg = z.arg();
    let coefficients = logs
        .iter()
        .enumerate()
        .map(|(n, &lg)| Complex64::from_polar((0.5 * (lg - log_norm)).exp(), n as f64 * arg))
        .collect();
    Ok(CoherentExpansion {
        family,
        ell,
        coefficients,
        tail_bound: tail,
    })
}

fn check_disk(eta: Complex64) -> Result<(), CoherentError> {
    let a = eta.norm();
    if !(a < 1.0 - 1e-9) {
        return Err(CoherentError::OutsideDisk(a));
    }
    Ok(())
}

/// Perelomov expansion for the unit-disk label `η`.
pub fn perelomov_expand(eta: Complex64, ell: u32) -> Result<CoherentExpansion, CoherentError> {
    check_disk(eta)?;
    let family = Family::Perelomov { eta };
    let a2 = eta.norm_sqr();
    if a2 == 0.0 {
        return Ok(CoherentExpansion {
            family,
            ell,
            coefficients: vec![Complex64::new(1.0, 0.0)],
            tail_bound: 0.0,
        });
    }
    let l = ell as f64;
    let ratio = |n: usize| a2 * (n as f64 + l + 1.0) / (n as f64 + 1.0);
    let log_first = (l + 1.0) * (-a2).ln_1p();
    let (logs, tail) = collect_terms(log_first, ratio, "perelomov")?;
    let arg = eta.arg();
    let coefficients = logs
        .iter()
        .enumerate()
        .map(|(n, &lg)| Complex64::from_polar((0.5 * lg).exp(), n as f64 * arg))
        .collect();
    Ok(CoherentExpansion {
        family,
        ell,
        coefficients,
        tail_bound: tail,
    })
}

/// `ln S_ℓ(x)` for real `x ≥ 0`, summed in the log domain.
fn ln_bessel_sum_real(ell: u32, x: f64) -> Result<f64, CoherentError> {
    if x == 0.0 {
        return Ok(-ln_gamma_ell(0, ell));
    }
    let l = ell as f64;
    let ratio = |n: usize| x / ((n as f64 + 1.0) * (n as f64 + l + 1.0));
    let mut logs = vec![-ln_gamma_ell(0, ell)];
    loop {
        let n = logs.len() - 1;
        let next = logs[n] + ratio(n).ln();
        let r_next = ratio(n + 1);
        if r_next < 0.5 && (next - log_sum_exp(&logs)).exp() < 1e-18 {
            break;
        }
        logs.push(next);
        if logs.len() > 100_000 {
            return Err(CoherentError::Truncation("bessel sum did not converge".into()));
        }
    }
    Ok(log_sum_exp(&logs))
}

/// Closed-form Barut–Girardello overlap `⟨z₁|z₂⟩`.
pub fn bg_overlap(z1: Complex64, z2: Complex64, ell: u32) -> Result<Complex64, CoherentError> {
    let w = z1.conj() * z2;
    let a1 = z1.norm_sqr();
    let a2 = z2.norm_sqr();
    let big = a1.max(a2);
    if big > 400.0 {
        // S_ℓ(z₁*z₂) loses all digits to cancellation off the positive axis.
        return Err(CoherentError::Invalid(format!(
            "|z| = {} too large for the overlap series",
            big.sqrt()
        )));
    }
    let s = bessel_sum(ell as f64, w)?;
    let log_den = 0.5 * (ln_bessel_sum_real(ell, a1)? + ln_bessel_sum_real(ell, a2)?);
    Ok(s * (-log_den).exp())
}

/// Closed-form Perelomov overlap `⟨η₁|η₂⟩`.
pub fn perelomov_overlap(
    eta1: Complex64,
    eta2: Complex64,
    ell: u32,
) -> Result<Complex64, CoherentError> {
    check_disk(eta1)?;
    check_disk(eta2)?;
    let l = ell as f64;
    let pref = ((1.0 - eta1.norm_sqr()) * (1.0 - eta2.norm_sqr())).powf(0.5 * (l + 1.0));
    let base = Complex64::new(1.0, 0.0) - eta1.conj() * eta2;
    Ok(pref * base.powi(-(ell as i32) - 1))
}

/// Diagonal element of `∫dμ(z)|z⟩⟨z|` in the radial basis, from
/// `dμ = (2/π)K_ℓ(2|z|)I_ℓ(2|z|)d²z`.
///
/// The angular integral gives `2πδ_{nm}`; the radial part
/// `4∫₀^∞ r^{2n+ℓ+1}K_ℓ(2r)dr / (n!Γ(n+ℓ+1))` is integrated adaptively.
pub fn bg_identity_check(ell: u32, n: usize, m: usize) -> Result<f64, CoherentError> {
    if n > 20 || m > 20 {
        return Err(CoherentError::Invalid("identity check limited to n, m <= 20".into()));
    }
    if n != m {
        return Ok(0.0);
    }
    let p = (2 * n + ell as usize + 1) as f64;
    let log_norm = ln_factorial(n) + ln_gamma_ell(n, ell);
    let peak = 0.5 * p.max(1.0);
    let mut err: Option<CoherentError> = None;
    let mut f = |r: f64| -> f64 {
        match bessel_k(ell as f64, 2.0 * r) {
            Ok(k) => (p * r.ln() - log_norm).exp() * k * 4.0,
            Err(e) => {
                err.get_or_insert(e.into());
                0.0
            }
        }
    };
    // r^p e^{−2r} has fallen by e^{−60} beyond peak + 30 + 2√p.
    let upper = peak + 30.0 + 2.0 * p.sqrt();
    let mut total = 0.0;
    let cuts = [0.0, 0.5 * peak, peak, 0.5 * (peak + upper), upper];
    for w in cuts.windows(2) {
        total += integrate_adaptive(&mut f, w[0], w[1], 0.0, 1e-12)?.value;
    }
    match err {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// Diagonal element of `∫dμ(η)|η⟩⟨η|` with `dμ = (ℓ/π)d²η/(1−|η|²)²`.
///
/// In `s = |η|²` the radial integral is
/// `∫₀¹ ℓ(1−s)^{ℓ−1}sⁿ ds · Γ(n+ℓ+1)/(n!Γ(ℓ+1))`.
pub fn perelomov_identity_check(ell: u32, n: usize, m: usize) -> Result<f64, CoherentError> {
    if ell == 0 {
        return Err(CoherentError::DivergentMeasure);
    }
    if n > 20 || m > 20 {
        return Err(CoherentError::Invalid("identity check limited to n, m <= 20".into()));
    }
    if n != m {
        return Ok(0.0);
    }
    let l = ell as f64;
    let log_c = ln_gamma_ell(n, ell) - ln_factorial(n) - ln_gamma(l + 1.0);
    let integral = integrate_adaptive(
        |s| l * (1.0 - s).powi(ell as i32 - 1) * s.powi(n as i32),
        0.0,
        1.0,
        0.0,
        1e-13,
    )?;
    Ok(integral.value * log_c.exp())
}

/// Bargmann-type transform of a state `Σcₙ|n⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticTransform {
    pub family_is_bg: bool,
    pub ell: u32,
    weights: Vec<Complex64>,
}

impl AnalyticTransform {
    /// Barut–Girardello: `f(z) = Σ cₙ zⁿ/√(n!Γ(n+ℓ+1))`.
    pub fn barut_girardello(ell: u32, coefficients: &[Complex64]) -> Self {
        let weights = coefficients
            .iter()
            .enumerate()
            .map(|(n, &c)| c * (-0.5 * (ln_factorial(n) + ln_gamma_ell(n, ell))).exp())
            .collect();
        AnalyticTransform {
            family_is_bg: true,
            ell,
            weights,
        }
    }

    /// Perelomov: `f(η) = Σ cₙ √(Γ(n+ℓ+1)/(n!Γ(ℓ+1))) (η*)ⁿ`.
    pub fn perelomov(ell: u32, coefficients: &[Complex64]) -> Self {
        let weights = coefficients
            .iter()
            .enumerate()
            .map(|(n, &c)| {
                c * (0.5 * (ln_gamma_ell(n, ell) - ln_factorial(n) - ln_gamma(ell as f64 + 1.0)))
                    .exp()
            })
            .collect();
        AnalyticTransform {
            family_is_bg: false,
            ell,
            weights,
        }
    }

    pub fn eval(&self, w: Complex64) -> Result<Complex64, CoherentError> {
        let x = if self.family_is_bg {
            w
        } else {
            check_disk(w)?;
            w.conj()
        };
        // Horner in x
        Ok(self
            .weights
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c))
    }
}

/// `√(S_ℓ(|z|²))`, the factor with `f(z) = √(S_ℓ(|z|²)) ⟨ψ_{z*}|Φ⟩`.
pub fn bg_transform_prefactor(z: Complex64, ell: u32) -> Result<f64, CoherentError> {
    Ok((0.5 * ln_bessel_sum_real(ell, z.norm_sqr())?).exp())
}

/// `(1−|η|²)^{−(ℓ+1)/2}`, the factor with `f(η) = (…)⟨ψ_η|Ψ⟩`.
pub fn perelomov_transform_prefactor(eta: Complex64, ell: u32) -> Result<f64, CoherentError> {
    check_disk(eta)?;
    Ok((1.0 - eta.norm_sqr()).powf(-0.5 * (ell as f64 + 1.0)))
}

/// `N(ρ, α) = √(ν/(πρ²)) e^{iℓα}`.
fn angular_prefactor(fr: &Frame, ell: u32, alpha: f64) -> Complex64 {
    Complex64::from_polar((fr.nu / PI).sqrt() / fr.rho, ell as f64 * alpha)
}

/// Wavefunction `Σ cₙ e^{iθ_{n,ℓ}(t)} N(ρ,α) φ_n^ℓ(u)` at `(r, α, t)`.
pub fn evaluate_series(
    exp: &CoherentExpansion,
    es: &ErmakovSolution,
    r: f64,
    alpha: f64,
    t: f64,
    tol: f64,
) -> Result<Complex64, CoherentError> {
    let fr = es.frame(t)?;
    let theta1 = if t == 0.0 {
        0.0
    } else {
        lr_phase(es, ModeIndex::new(0, 0), t, tol)?
    };
    Ok(series_at(exp, &fr, theta1, r, alpha))
}

fn series_at(exp: &CoherentExpansion, fr: &Frame, theta1: f64, r: f64, alpha: f64) -> Complex64 {
    let s = fr.nu.sqrt() * r / fr.rho;
    let varpi = fr.varpi();
    let ell = exp.ell;
    let sum: Complex64 = exp
        .coefficients
        .iter()
        .enumerate()
        .map(|(n, &c)| {
            let theta = (2 * n + ell as usize + 1) as f64 * theta1;
            c * Complex64::from_polar(1.0, theta) * basis_function(varpi, ell, n, s)
        })
        .sum();
    angular_prefactor(fr, ell, alpha) * sum
}

/// Generating-function closed form at `t = 0`:
/// Barut–Girardello `N S^{−1/2} u^{ℓ/2} e^{z−ϖu/2} S_ℓ(−uz)` (the Bessel `J`
/// form without a square-root branch), Perelomov
/// `N (1−|η|²)^{(ℓ+1)/2}/√Γ(ℓ+1) · u^{ℓ/2} e^{−ϖu/2} e^{uη/(η−1)} (1−η)^{−ℓ−1}`.
pub fn evaluate_closed_form(
    exp: &CoherentExpansion,
    es: &ErmakovSolution,
    r: f64,
    alpha: f64,
    t: f64,
) -> Result<Complex64, CoherentError> {
    if t != 0.0 {
        return Err(CoherentError::ClosedFormTime(t));
    }
    let fr = es.frame(0.0)?;
    let u = fr.u_of_r(r);
    let l = exp.ell as f64;
    let gauss = (-0.5 * fr.varpi() * u).exp() * u.powf(0.5 * l);
    let pref = angular_prefactor(&fr, exp.ell, alpha);
    let one = Complex64::new(1.0, 0.0);
    let value = match exp.family {
        Family::BarutGirardello { z } => {
            let log_n = -0.5 * ln_bessel_sum_real(exp.ell, z.norm_sqr())?;
            let s = bessel_sum(l, -u * z)?;
            gauss * z.exp() * s * log_n.exp()
        }
        Family::Perelomov { eta } => {
            let norm = (1.0 - eta.norm_sqr()).powf(0.5 * (l + 1.0)) / ln_gamma(l + 1.0).exp().sqrt();
            let gen = (u * eta / (eta - one)).exp() * (one - eta).powi(-(exp.ell as i32) - 1);
            gauss * gen * norm
        }
    };
    Ok(pref * value)
}

/// Series (and, at `t = 0`, closed-form) samples on a polar grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentSample {
    pub radii: Vec<f64>,
    pub angles: Vec<f64>,
    /// Radius-major.
    pub series: Vec<Complex64>,
    pub closed_form: Option<Vec<Complex64>>,
    /// `∫|ψ|² r dr dα` by trapezoid in `r` and the equally spaced angle rule.
    pub norm: f64,
}

/// Evaluates the state on `radii × angles`.
pub fn sample(
    exp: &CoherentExpansion,
    es: &ErmakovSolution,
    radii: &[f64],
    angles: &[f64],
    t: f64,
    tol: f64,
) -> Result<CoherentSample, CoherentError> {
    if radii.len() < 2 || angles.is_empty() {
        return Err(CoherentError::Invalid("sample grid too small".into()));
    }
    let fr = es.frame(t)?;
    let theta1 = if t == 0.0 {
        0.0
    } else {
        lr_phase(es, ModeIndex::new(0, 0), t, tol)?
    };
    let mut series = Vec::with_capacity(radii.len() * angles.len());
    for &r in radii {
        for &a in angles {
            series.push(series_at(exp, &fr, theta1, r, a));
        }
    }
    let closed_form = if t == 0.0 {
        let mut v = Vec::with_capacity(series.len());
        for &r in radii {
            for &a in angles {
                v.push(evaluate_closed_form(exp, es, r, a, 0.0)?);
            }
        }
        Some(v)
    } else {
        None
    };
    let na = angles.len();
    let ring = |i: usize| -> f64 {
        series[i * na..(i + 1) * na].iter().map(|v| v.norm_sqr()).sum::<f64>() * 2.0 * PI
            / na as f64
            * radii[i]
    };
    let mut norm = 0.0;
    for i in 1..radii.len() {
        norm += 0.5 * (radii[i] - radii[i - 1]) * (ring(i) + ring(i - 1));
    }
    Ok(CoherentSample {
        radii: radii.to_vec(),
        angles: angles.to_vec(),
        series,
        closed_form,
        norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_sum_exp_basics() {
        assert!((log_sum_exp(&[0.0, 0.0]) - 2f64.ln()).abs() < 1e-15);
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
    }

    #[test]
    fn bessel_sum_log_matches_direct() {
        for ell in 0..4 {
            for &x in &[0.0, 0.3, 4.0, 25.0] {
                let direct = bessel_sum(ell as f64, Complex64::new(x, 0.0)).unwrap().re;
                let lg = ln_bessel_sum_real(ell, x).unwrap();
                assert!((lg.exp() - direct).abs() < 1e-13 * direct);
            }
        }
    }

    #[test]
    fn zero_labels_give_ground_state() {
        let b = bg_expand(Complex64::new(0.0, 0.0), 2).unwrap();
        assert_eq!(b.coefficients, vec![Complex64::new(1.0, 0.0)]);
        let p = perelomov_expand(Complex64::new(0.0, 0.0), 3).unwrap();
        assert_eq!(p.coefficients, vec![Complex64::new(1.0, 0.0)]);
    }

    #[test]
    fn rejects_points_outside_disk() {
        assert!(perelomov_expand(Complex64::new(1.0, 0.0), 1).is_err());
        assert!(matches!(
            perelomov_identity_check(0, 1, 1),
            Err(CoherentError::DivergentMeasure)
        ));
    }
}
