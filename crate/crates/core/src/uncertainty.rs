//! Dispersions and uncertainty products in the invariant eigenstates.
//!
//! The kinetic momentum is `p_k = mẋ = f(t)p`, so the kinetic products pick up
//! a factor `f(t)` and lose the `1/2` floor once `f` decays.

use num_complex::Complex64;
use rustfft::FftPlanner;
use thiserror::Error;

use crate::ermakov::{ErmakovError, ErmakovSolution, Frame};
use crate::spectra::{polar_value, ModeIndex};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UncertaintyError {
    #[error(transparent)]
    Ermakov(#[from] ErmakovError),
    #[error("grid coverage: {0}")]
    Coverage(String),
}

/// Dispersions of one mode at one time, with the products and their floors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyReport {
    pub mode: ModeIndex,
    pub t: f64,
    pub f: f64,
    pub dx1: f64,
    pub dx2: f64,
    pub dp1: f64,
    pub dp2: f64,
    pub dpk1: f64,
    pub dpk2: f64,
}

impl UncertaintyReport {
    /// `Δx₁Δp₁`.
    pub fn canonical_product(&self) -> f64 {
        self.dx1 * self.dp1
    }

    /// `Δx₁Δp_k₁`.
    pub fn kinetic_product(&self) -> f64 {
        self.dx1 * self.dpk1
    }

    pub fn position_product(&self) -> f64 {
        self.dx1 * self.dx2
    }

    pub fn momentum_product(&self) -> f64 {
        self.dp1 * self.dp2
    }

    pub fn kinetic_momentum_product(&self) -> f64 {
        self.dpk1 * self.dpk2
    }

    /// `1/2`.
    pub fn canonical_bound(&self) -> f64 {
        0.5
    }

    /// `f(t)/2`.
    pub fn kinetic_bound(&self) -> f64 {
        0.5 * self.f
    }
}

fn closed_from_frame(fr: &Frame, mode: ModeIndex) -> UncertaintyReport {
    let k = (mode.total() + 1) as f64;
    let c = fr.c();
    let dx = (fr.rho * fr.rho * k / (2.0 * fr.nu)).sqrt();
    let dp = (0.5 * k * (c * c / fr.nu + fr.nu / (fr.rho * fr.rho))).sqrt();
    UncertaintyReport {
        mode,
        t: fr.t,
        f: fr.f,
        dx1: dx,
        dx2: dx,
        dp1: dp,
        dp2: dp,
        dpk1: fr.f * dp,
        dpk2: fr.f * dp,
    }
}

/// Closed-form dispersions
/// `Δx = √(ρ²(2n+|ℓ|+1)/2ν)`, `Δp = √((2n+|ℓ|+1)(m²f⁻²ρ̇²/ν + ν/ρ²)/2)`,
/// `Δp_k = fΔp`.
pub fn dispersions_closed_form(
    es: &ErmakovSolution,
    mode: ModeIndex,
    t: f64,
) -> Result<UncertaintyReport, UncertaintyError> {
    Ok(closed_from_frame(&es.frame(t)?, mode))
}

/// `Δx₁Δp₁ = ½(2n+|ℓ|+1)√(1 + m²f⁻²ρ̇²ρ²/ν²)`.
pub fn canonical_product_closed_form(fr: &Frame, mode: ModeIndex) -> f64 {
    let s = fr.c() * fr.rho / fr.nu;
    0.5 * (mode.total() + 1) as f64 * (1.0 + s * s).sqrt()
}

/// Moments measured on a grid, normalized by the grid norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridMoments {
    pub norm: f64,
    pub mean_x: [f64; 2],
    pub mean_p: [f64; 2],
    pub second_x: [f64; 2],
    pub second_p: [f64; 2],
    pub points_per_axis: usize,
}

const MIN_GRID: usize = 128;
const MAX_GRID: usize = 1024;

/// Half-width of the quadrature square in standard radii.
const HALF_WIDTH_SIGMAS: f64 = 8.0;

/// Momentum-space reach, in momentum standard radii, that the Nyquist
/// wavenumber must exceed.
const MOMENTUM_REACH: f64 = 9.0;

/// Points per axis: the smallest power of two in `[128, 1024]` whose Nyquist
/// wavenumber covers the chirped momentum spread of the state.
pub fn grid_size(fr: &Frame, mode: ModeIndex) -> Result<usize, UncertaintyError> {
    let half_width = HALF_WIDTH_SIGMAS * fr.sigma();
    let sigma_p = (fr.c() * fr.c() / fr.nu + fr.nu / (fr.rho * fr.rho)).sqrt();
    let reach = (MOMENTUM_REACH + ((mode.total() + 1) as f64).sqrt()) * sigma_p;
    // Nyquist π/h with h = 2L/n.
    let need = reach * 2.0 * half_width / std::f64::consts::PI;
    let mut n = MIN_GRID;
    while (n as f64) < need {
        n *= 2;
        if n > MAX_GRID {
            return Err(UncertaintyError::Coverage(format!(
                "state needs more than {MAX_GRID} points per axis (chirp too strong)"
            )));
        }
    }
    Ok(n)
}

/// Angular wavenumbers of an `n`-point periodic grid with spacing `h`.
fn wavenumbers(n: usize, h: f64) -> Vec<f64> {
    let scale = 2.0 * std::f64::consts::PI / (n as f64 * h);
    (0..n)
        .map(|k| {
            if k < n / 2 {
                k as f64 * scale
            } else if k == n / 2 {
                // Nyquist mode: no well-defined derivative.
                0.0
            } else {
                (k as f64 - n as f64) * scale
            }
        })
        .collect()
}

/// Spectral derivative of a row-major `n × n` field along axis 0 or 1.
fn spectral_derivative(field: &[Complex64], n: usize, h: f64, axis: usize) -> Vec<Complex64> {
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let k = wavenumbers(n, h);
    let mut out = field.to_vec();
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for a in 0..n {
        for b in 0..n {
            line[b] = if axis == 1 { out[a * n + b] } else { out[b * n + a] };
        }
        fwd.process(&mut line);
        for (v, &kk) in line.iter_mut().zip(&k) {
            *v *= Complex64::new(0.0, kk / n as f64);
        }
        inv.process(&mut line);
        for b in 0..n {
            if axis == 1 {
                out[a * n + b] = line[b];
            } else {
                out[b * n + a] = line[b];
            }
        }
    }
    out
}

/// First and second moments of `x̂ⱼ` and `p̂ⱼ` for a mode at `t`, from the
/// eigenfunction sampled on a square grid with spectral derivatives.
pub fn grid_moments(
    es: &ErmakovSolution,
    mode: ModeIndex,
    t: f64,
) -> Result<GridMoments, UncertaintyError> {
    let fr = es.frame(t)?;
    let n = grid_size(&fr, mode)?;
    let half_width = HALF_WIDTH_SIGMAS * fr.sigma();
    let h = 2.0 * half_width / n as f64;
    let coord = |k: usize| -half_width + k as f64 * h;
    let mut psi = Vec::with_capacity(n * n);
    for i in 0..n {
        let x1 = coord(i);
        for j in 0..n {
            let x2 = coord(j);
            psi.push(polar_value(&fr, mode, x1.hypot(x2), x2.atan2(x1)));
        }
    }
    let d1 = spectral_derivative(&psi, n, h, 0);
    let d2 = spectral_derivative(&psi, n, h, 1);
    let mut norm = 0.0;
    let mut mx = [0.0; 2];
    let mut mx2 = [0.0; 2];
    let mut mp = [0.0; 2];
    let mut mp2 = [0.0; 2];
    for i in 0..n {
        let x1 = coord(i);
        for j in 0..n {
            let x2 = coord(j);
            let k = i * n + j;
            let w = psi[k].norm_sqr();
            norm += w;
            mx[0] += w * x1;
            mx[1] += w * x2;
            mx2[0] += w * x1 * x1;
            mx2[1] += w * x2 * x2;
            // ⟨p⟩ = ∫ψ*(−i∂ψ), ⟨p²⟩ = ∫|∂ψ|²
            mp[0] += (psi[k].conj() * d1[k] * Complex64::new(0.0, -1.0)).re;
            mp[1] += (psi[k].conj() * d2[k] * Complex64::new(0.0, -1.0)).re;
            mp2[0] += d1[k].norm_sqr();
            mp2[1] += d2[k].norm_sqr();
        }
    }
    let scale = |v: [f64; 2]| [v[0] / norm, v[1] / norm];
    Ok(GridMoments {
        norm: norm * h * h,
        mean_x: scale(mx),
        mean_p: scale(mp),
        second_x: scale(mx2),
        second_p: scale(mp2),
        points_per_axis: n,
    })
}

/// Dispersions from [`grid_moments`].
pub fn dispersions_quadrature(
    es: &ErmakovSolution,
    mode: ModeIndex,
    t: f64,
) -> Result<UncertaintyReport, UncertaintyError> {
    let fr = es.frame(t)?;
    let g = grid_moments(es, mode, t)?;
    let sd = |second: f64, mean: f64| (second - mean * mean).max(0.0).sqrt();
    let dp1 = sd(g.second_p[0], g.mean_p[0]);
    let dp2 = sd(g.second_p[1], g.mean_p[1]);
    Ok(UncertaintyReport {
        mode,
        t,
        f: fr.f,
        dx1: sd(g.second_x[0], g.mean_x[0]),
        dx2: sd(g.second_x[1], g.mean_x[1]),
        dp1,
        dp2,
        dpk1: fr.f * dp1,
        dpk2: fr.f * dp2,
    })
}
