//! Classical trajectories of `z̈ + η(t)ż + ω²(t)z = 0` with `z = x₂ + ix₁`.

use num_complex::Complex64;
use thiserror::Error;

use crate::ode::{dopri5, OdeError, OdeOptions};
use crate::profiles::{FrequencyProfile, FrictionProfile, OscillatorConfig, ProfileError};
use crate::specfn::{bessel_j, bessel_y01, SpecFnError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassicalError {
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Ode(#[from] OdeError),
    #[error(transparent)]
    SpecFn(#[from] SpecFnError),
    #[error("regime {kind:?} does not match gamma = {gamma}, omega0 = {omega0}: {detail}")]
    RegimeMismatch {
        kind: RegimeKind,
        gamma: f64,
        omega0: f64,
        detail: &'static str,
    },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexTrajectory {
    pub times: Vec<f64>,
    pub z: Vec<Complex64>,
    pub zdot: Vec<Complex64>,
}

impl ComplexTrajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeKind {
    /// `e^{−γt/2}[A₁e^{τt/2} + A₂e^{−τt/2}]`, `τ² = γ² − 4ω₀² > 0`.
    OverDamped,
    /// `e^{−γt/2}[A₁ sin(τt/2) + A₂ cos(τt/2)]`, `τ² = 4ω₀² − γ² > 0`.
    UnderDamped,
    /// `e^{−γt/2}[A₁ + A₂t]`, `γ² = 4ω₀²`.
    CriticallyDamped,
    /// `ω = ω₀e^{−γt/2}`: `e^{−γt/2}[B₁J₁(x) + B₂Y₁(x)]`, `x = (2ω₀/γ)e^{−γt/2}`.
    ExpHalfFrequency,
    /// `ω = ω₀e^{−γt}`: `C₁cos s + C₂sin s`, `s = (ω₀/γ)e^{−γt}`.
    ExpFrequency,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeParams {
    pub gamma: f64,
    pub omega0: f64,
}

/// A closed-form family together with its two complex constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalRegime {
    pub kind: RegimeKind,
    pub constants: (Complex64, Complex64),
}

const CRITICAL_REL_TOL: f64 = 1e-12;

fn check_params(kind: RegimeKind, p: RegimeParams) -> Result<(), ClassicalError> {
    let mismatch = |detail| ClassicalError::RegimeMismatch {
        kind,
        gamma: p.gamma,
        omega0: p.omega0,
        detail,
    };
    if !(p.gamma >= 0.0) || !p.gamma.is_finite() || !(p.omega0 > 0.0) || !p.omega0.is_finite() {
        return Err(mismatch("need gamma >= 0 and omega0 > 0"));
    }
    let g2 = p.gamma * p.gamma;
    let w2 = 4.0 * p.omega0 * p.omega0;
    let critical = (g2 - w2).abs() <= CRITICAL_REL_TOL * g2.max(w2);
    match kind {
        RegimeKind::OverDamped if critical || g2 < w2 => Err(mismatch("need gamma^2 > 4 omega0^2")),
        RegimeKind::UnderDamped if critical || g2 > w2 => Err(mismatch("need 4 omega0^2 > gamma^2")),
        RegimeKind::CriticallyDamped if !critical => Err(mismatch("need gamma^2 = 4 omega0^2")),
        RegimeKind::ExpHalfFrequency | RegimeKind::ExpFrequency if p.gamma == 0.0 => {
            Err(mismatch("need gamma > 0"))
        }
        _ => Ok(()),
    }
}

/// The two real basis solutions and their time derivatives at `t`:
/// `(φ₁, φ₁', φ₂, φ₂')`.
fn basis(kind: RegimeKind, p: RegimeParams, t: f64) -> Result<[f64; 4], ClassicalError> {
    let g = p.gamma;
    let w = p.omega0;
    let decay = (-0.5 * g * t).exp();
    Ok(match kind {
        RegimeKind::OverDamped => {
            let tau = (g * g - 4.0 * w * w).sqrt();
            let e1 = (0.5 * (tau - g) * t).exp();
            let e2 = (-0.5 * (tau + g) * t).exp();
            [e1, 0.5 * (tau - g) * e1, e2, -0.5 * (tau + g) * e2]
        }
        RegimeKind::UnderDamped => {
            let tau = (4.0 * w * w - g * g).sqrt();
            let (s, c) = (0.5 * tau * t).sin_cos();
            [
                decay * s,
                decay * (-0.5 * g * s + 0.5 * tau * c),
                decay * c,
                decay * (-0.5 * g * c - 0.5 * tau * s),
            ]
        }
        RegimeKind::CriticallyDamped => [
            decay,
            -0.5 * g * decay,
            t * decay,
            decay * (1.0 - 0.5 * g * t),
        ],
        RegimeKind::ExpHalfFrequency => {
            let x = 2.0 * w / g * decay;
            let j0 = bessel_j(0.0, x)?;
            let j1 = bessel_j(1.0, x)?;
            let (y0, y1) = bessel_y01(x)?;
            // d/dt[e^{−γt/2} Z₁(x)] = −(γ/2) e^{−γt/2} x Z₀(x)
            let k = -0.5 * g * decay * x;
            [decay * j1, k * j0, decay * y1, k * y0]
        }
        RegimeKind::ExpFrequency => {
            let s = w / g * (-g * t).exp();
            let (sn, cs) = s.sin_cos();
            [cs, g * s * sn, sn, -g * s * cs]
        }
    })
}

/// `z(t)` for a closed-form regime.
pub fn closed_form(
    regime: &ClassicalRegime,
    params: RegimeParams,
    t: f64,
) -> Result<Complex64, ClassicalError> {
    Ok(closed_form_state(regime, params, t)?.0)
}

/// `(z(t), ż(t))` for a closed-form regime.
pub fn closed_form_state(
    regime: &ClassicalRegime,
    params: RegimeParams,
    t: f64,
) -> Result<(Complex64, Complex64), ClassicalError> {
    check_params(regime.kind, params)?;
    let [p1, d1, p2, d2] = basis(regime.kind, params, t)?;
    let (c1, c2) = regime.constants;
    Ok((c1 * p1 + c2 * p2, c1 * d1 + c2 * d2))
}

/// Constants of `kind` matching `z(0) = z0`, `ż(0) = zdot0`.
pub fn fit_constants(
    kind: RegimeKind,
    params: RegimeParams,
    z0: Complex64,
    zdot0: Complex64,
) -> Result<ClassicalRegime, ClassicalError> {
    check_params(kind, params)?;
    let [p1, d1, p2, d2] = basis(kind, params, 0.0)?;
    let det = p1 * d2 - p2 * d1;
    if det == 0.0 || !det.is_finite() {
        return Err(ClassicalError::Invalid(format!(
            "{kind:?} basis is degenerate at t = 0"
        )));
    }
    let c1 = (z0 * d2 - zdot0 * p2) / det;
    let c2 = (zdot0 * p1 - z0 * d1) / det;
    Ok(ClassicalRegime {
        kind,
        constants: (c1, c2),
    })
}

/// The closed-form family that solves the equation of motion of `cfg`, if
/// any. Undamped constant-frequency oscillators map to `UnderDamped` with
/// `γ = 0`.
pub fn regime_for(cfg: &OscillatorConfig) -> Option<(RegimeKind, RegimeParams)> {
    let gamma_f = match cfg.friction {
        FrictionProfile::Unit => 0.0,
        FrictionProfile::ExponentialDecay { gamma } => gamma,
        FrictionProfile::Tabulated(_) => return None,
    };
    match cfg.frequency {
        FrequencyProfile::Constant { omega0 } => {
            let p = RegimeParams {
                gamma: gamma_f,
                omega0,
            };
            let g2 = gamma_f * gamma_f;
            let w2 = 4.0 * omega0 * omega0;
            let kind = if (g2 - w2).abs() <= CRITICAL_REL_TOL * g2.max(w2) {
                RegimeKind::CriticallyDamped
            } else if g2 > w2 {
                RegimeKind::OverDamped
            } else {
                RegimeKind::UnderDamped
            };
            Some((kind, p))
        }
        FrequencyProfile::ExpHalf { omega0, gamma } if gamma == gamma_f && gamma > 0.0 => {
            Some((RegimeKind::ExpHalfFrequency, RegimeParams { gamma, omega0 }))
        }
        FrequencyProfile::Exp { omega0, gamma } if gamma == gamma_f && gamma > 0.0 => {
            Some((RegimeKind::ExpFrequency, RegimeParams { gamma, omega0 }))
        }
        _ => None,
    }
}

/// `n + 1` equally spaced times on `[0, t_end]`.
pub fn uniform_grid(t_end: f64, n: usize) -> Vec<f64> {
    let n = n.max(1);
    (0..=n).map(|k| t_end * k as f64 / n as f64).collect()
}

/// Integrates the equation of motion with Dormand–Prince 5(4) and samples
/// the dense output on `grid` (increasing, starting at or after 0).
pub fn integrate_eom(
    cfg: &OscillatorConfig,
    z0: Complex64,
    zdot0: Complex64,
    grid: &[f64],
    tol: f64,
) -> Result<ComplexTrajectory, ClassicalError> {
    if grid.is_empty() {
        return Err(ClassicalError::Invalid("empty time grid".into()));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) || !(grid[0] >= 0.0) {
        return Err(ClassicalError::Invalid(
            "time grid must be strictly increasing and start at t >= 0".into(),
        ));
    }
    let t_end = *grid.last().unwrap_or(&0.0);
    if !(t_end > 0.0) {
        return Err(ClassicalError::Invalid(format!(
            "need a positive final time, got {t_end}"
        )));
    }
    if !(tol > 0.0) {
        return Err(ClassicalError::Invalid(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    cfg.check_span(0.0, t_end)?;
    let rhs = |t: f64, y: &[f64; 4]| {
        let eta = cfg.eta_at(t);
        let w2 = cfg.omega_at(t).powi(2);
        [
            y[2],
            y[3],
            -eta * y[2] - w2 * y[0],
            -eta * y[3] - w2 * y[1],
        ]
    };
    let sol = dopri5(
        rhs,
        0.0,
        [z0.re, z0.im, zdot0.re, zdot0.im],
        t_end,
        OdeOptions::with_tol(tol),
        |_, _| None,
    )?;
    let mut traj = ComplexTrajectory {
        times: grid.to_vec(),
        z: Vec::with_capacity(grid.len()),
        zdot: Vec::with_capacity(grid.len()),
    };
    for &t in grid {
        let y = sol.eval(t);
        traj.z.push(Complex64::new(y[0], y[1]));
        traj.zdot.push(Complex64::new(y[2], y[3]));
    }
    Ok(traj)
}

/// Canonical momentum `p = f⁻¹(t) m ẋ`.
pub fn canonical_momentum(cfg: &OscillatorConfig, xdot: f64, t: f64) -> Result<f64, ClassicalError> {
    Ok(cfg.m * xdot / cfg.f(t)?)
}

/// `H = (f/2m)|p|² + (mω²/2f)|x|²`.
pub fn classical_hamiltonian(
    cfg: &OscillatorConfig,
    x: [f64; 2],
    p: [f64; 2],
    t: f64,
) -> Result<f64, ClassicalError> {
    let f = cfg.f(t)?;
    let w = cfg.omega(t)?;
    Ok(f / (2.0 * cfg.m) * (p[0] * p[0] + p[1] * p[1])
        + cfg.m * w * w / (2.0 * f) * (x[0] * x[0] + x[1] * x[1]))
}

/// `E_m = (m/2)|ẋ|² + (mω²/2)|x|²`, which equals `f(t)·H`.
pub fn mechanical_energy(
    cfg: &OscillatorConfig,
    x: [f64; 2],
    xdot: [f64; 2],
    t: f64,
) -> Result<f64, ClassicalError> {
    let w = cfg.omega(t)?;
    Ok(0.5 * cfg.m * (xdot[0] * xdot[0] + xdot[1] * xdot[1])
        + 0.5 * cfg.m * w * w * (x[0] * x[0] + x[1] * x[1]))
}

/// Splits `z = x₂ + ix₁` into `(x₁, x₂)`.
pub fn coordinates(z: Complex64) -> [f64; 2] {
    [z.im, z.re]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn closed_form_examples() {
        let r = ClassicalRegime {
            kind: RegimeKind::UnderDamped,
            constants: (c(0.0), c(1.0)),
        };
        let p = RegimeParams {
            gamma: 0.0,
            omega0: 1.0,
        };
        let z = closed_form(&r, p, std::f64::consts::PI).unwrap();
        assert!((z.re + 1.0).abs() < 1e-15);

        let r = ClassicalRegime {
            kind: RegimeKind::CriticallyDamped,
            constants: (c(1.0), c(0.0)),
        };
        let p = RegimeParams {
            gamma: 2.0,
            omega0: 1.0,
        };
        let z = closed_form(&r, p, 1.0).unwrap();
        assert!((z.re - (-1.0f64).exp()).abs() < 1e-15);

        let r = ClassicalRegime {
            kind: RegimeKind::ExpFrequency,
            constants: (c(1.0), c(0.0)),
        };
        let p = RegimeParams {
            gamma: 0.5,
            omega0: 1.0,
        };
        let z = closed_form(&r, p, 0.0).unwrap();
        assert!((z.re - 2.0f64.cos()).abs() < 1e-15);
    }

    #[test]
    fn regime_mismatch_is_rejected() {
        let r = ClassicalRegime {
            kind: RegimeKind::OverDamped,
            constants: (c(1.0), c(0.0)),
        };
        let p = RegimeParams {
            gamma: 0.5,
            omega0: 1.0,
        };
        assert!(matches!(
            closed_form(&r, p, 0.0),
            Err(ClassicalError::RegimeMismatch { .. })
        ));
    }

    #[test]
    fn fitted_constants_reproduce_initial_data() {
        let z0 = Complex64::new(0.3, -1.1);
        let v0 = Complex64::new(-0.7, 0.25);
        for (kind, gamma, omega0) in [
            (RegimeKind::OverDamped, 3.0, 1.0),
            (RegimeKind::UnderDamped, 0.4, 1.0),
            (RegimeKind::CriticallyDamped, 2.0, 1.0),
            (RegimeKind::ExpHalfFrequency, 0.5, 1.0),
            (RegimeKind::ExpFrequency, 0.5, 1.0),
        ] {
            let p = RegimeParams { gamma, omega0 };
            let r = fit_constants(kind, p, z0, v0).unwrap();
            let (z, v) = closed_form_state(&r, p, 0.0).unwrap();
            assert!((z - z0).norm() < 1e-13, "{kind:?}");
            assert!((v - v0).norm() < 1e-13, "{kind:?}");
        }
    }

    #[test]
    fn momentum_and_energy() {
        let cfg = OscillatorConfig::static_oscillator(2.0, 1.0, 1.0).unwrap();
        assert_eq!(canonical_momentum(&cfg, 3.0, 0.0).unwrap(), 6.0);
        let cfg = OscillatorConfig::caldirola_kanai(1.0, 1.0, 1.0, 0.2).unwrap();
        let p = canonical_momentum(&cfg, 1.0, 1.0).unwrap();
        assert!((p - 0.2f64.exp()).abs() < 1e-15);
        let cfg = OscillatorConfig::static_oscillator(1.0, 1.0, 1.0).unwrap();
        assert_eq!(mechanical_energy(&cfg, [1.0, 0.0], [0.0, 0.0], 0.0).unwrap(), 0.5);
    }
}
