//! The auxiliary equation `ρ̈ + ηρ̇ + ω²ρ = ν²f²/(m²ρ³)`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::ode::{dopri5, DenseSolution, OdeError, OdeOptions};
use crate::profiles::{FrequencyProfile, FrictionProfile, OscillatorConfig, ProfileError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ErmakovError {
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Ode(OdeError),
    #[error("rho approaching zero at t = {t} (rho = {rho:e}); the 1/rho^3 term is singular")]
    Singularity { t: f64, rho: f64 },
    #[error("profile mismatch: {0}")]
    ProfileMismatch(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("t = {t} outside the integrated span [{lo}, {hi}]")]
    OutOfSpan { t: f64, lo: f64, hi: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErmakovSource {
    ClosedFormStatic,
    ClosedFormCK,
    Numeric,
    /// User-supplied `ρ(t)`; need not solve the equation at all.
    Prescribed,
}

type RhoFn = dyn Fn(f64) -> [f64; 3] + Send + Sync;

#[derive(Clone)]
enum Repr {
    Static { rho: f64 },
    CaldirolaKanai { amp: f64, gamma: f64 },
    Numeric { sol: DenseSolution<2> },
    Prescribed(Arc<RhoFn>),
}

/// A solution `ρ(t)` bound to the oscillator it belongs to.
#[derive(Clone)]
pub struct ErmakovSolution {
    cfg: OscillatorConfig,
    repr: Repr,
}

impl fmt::Debug for ErmakovSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ErmakovSolution")
            .field("source", &self.source())
            .field("span", &self.span())
            .finish()
    }
}

/// Snapshot of every time-dependent coefficient at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub t: f64,
    pub m: f64,
    pub nu: f64,
    pub f: f64,
    pub eta: f64,
    pub omega: f64,
    pub rho: f64,
    pub rho_dot: f64,
}

impl Frame {
    /// `c = m f⁻¹ ρ̇`.
    pub fn c(&self) -> f64 {
        self.m * self.rho_dot / self.f
    }

    /// `ϖ = 1 − i m f⁻¹ ρ ρ̇ / ν`.
    pub fn varpi(&self) -> Complex64 {
        Complex64::new(1.0, -self.c() * self.rho / self.nu)
    }

    /// Standard radius `ρ/√ν`.
    pub fn sigma(&self) -> f64 {
        self.rho / self.nu.sqrt()
    }

    /// `u = ν r²/ρ²`.
    pub fn u_of_r(&self, r: f64) -> f64 {
        self.nu * r * r / (self.rho * self.rho)
    }
}

fn rhs(cfg: &OscillatorConfig, t: f64, rho: f64, rho_dot: f64) -> f64 {
    let f = cfg.f_at(t);
    let w = cfg.omega_at(t);
    -cfg.eta_at(t) * rho_dot - w * w * rho + (cfg.nu * f / cfg.m).powi(2) / rho.powi(3)
}

impl ErmakovSolution {
    /// Constant `ρ = √(ν/(mω₀))` for `f ≡ 1`, `ω ≡ ω₀`.
    pub fn solve_static(cfg: &OscillatorConfig) -> Result<Self, ErmakovError> {
        let omega0 = match (&cfg.friction, &cfg.frequency) {
            (FrictionProfile::Unit, FrequencyProfile::Constant { omega0 }) => *omega0,
            _ => {
                return Err(ErmakovError::ProfileMismatch(
                    "static solution needs unit friction and constant frequency".into(),
                ))
            }
        };
        Ok(ErmakovSolution {
            cfg: cfg.clone(),
            repr: Repr::Static {
                rho: (cfg.nu / (cfg.m * omega0)).sqrt(),
            },
        })
    }

    /// `ρ = √(ν/(mΩ)) e^{−γt/2}`, `Ω² = ω₀² − γ²/4 > 0`, for `f = e^{−γt}`.
    pub fn solve_caldirola_kanai(cfg: &OscillatorConfig) -> Result<Self, ErmakovError> {
        let (gamma, omega0) = match (&cfg.friction, &cfg.frequency) {
            (FrictionProfile::ExponentialDecay { gamma }, FrequencyProfile::Constant { omega0 }) => {
                (*gamma, *omega0)
            }
            _ => {
                return Err(ErmakovError::ProfileMismatch(
                    "Caldirola-Kanai solution needs exponential friction and constant frequency"
                        .into(),
                ))
            }
        };
        let big_omega2 = omega0 * omega0 - 0.25 * gamma * gamma;
        if !(big_omega2 > 0.0) {
            return Err(ErmakovError::Parameter(format!(
                "need omega0^2 - gamma^2/4 > 0, got {big_omega2}"
            )));
        }
        Ok(ErmakovSolution {
            cfg: cfg.clone(),
            repr: Repr::CaldirolaKanai {
                amp: (cfg.nu / (cfg.m * big_omega2.sqrt())).sqrt(),
                gamma,
            },
        })
    }

    /// Integrates the equation on `[0, t_end]` from `(ρ₀, ρ̇₀)`.
    ///
    /// Aborts when `ρ` drops below `10⁻⁶ ρ₀`.
    pub fn solve_numeric(
        cfg: &OscillatorConfig,
        rho0: f64,
        rho_dot0: f64,
        t_end: f64,
        tol: f64,
    ) -> Result<Self, ErmakovError> {
        if !(rho0 > 0.0) || !rho0.is_finite() {
            return Err(ErmakovError::Parameter(format!(
                "rho0 must be positive, got {rho0}"
            )));
        }
        if !rho_dot0.is_finite() {
            return Err(ErmakovError::Parameter(format!(
                "rho_dot0 must be finite, got {rho_dot0}"
            )));
        }
        if !(t_end > 0.0) {
            return Err(ErmakovError::Parameter(format!(
                "t_end must be positive, got {t_end}"
            )));
        }
        cfg.check_span(0.0, t_end)?;
        let floor = 1e-6 * rho0;
        let sol = dopri5(
            |t, y: &[f64; 2]| [y[1], rhs(cfg, t, y[0], y[1])],
            0.0,
            [rho0, rho_dot0],
            t_end,
            OdeOptions::with_tol(tol),
            |_, y| (y[0] < floor).then(|| format!("{:e}", y[0])),
        )
        .map_err(|e| match e {
            OdeError::Guard { t, reason } => ErmakovError::Singularity {
                t,
                rho: reason.parse().unwrap_or(0.0),
            },
            other => ErmakovError::Ode(other),
        })?;
        Ok(ErmakovSolution {
            cfg: cfg.clone(),
            repr: Repr::Numeric { sol },
        })
    }

    /// Wraps an arbitrary `t ↦ [ρ, ρ̇, ρ̈]`. Useful for checking that
    /// diagnostics reject functions that do not solve the equation.
    pub fn prescribed<F>(cfg: &OscillatorConfig, rho: F) -> Self
    where
        F: Fn(f64) -> [f64; 3] + Send + Sync + 'static,
    {
        ErmakovSolution {
            cfg: cfg.clone(),
            repr: Repr::Prescribed(Arc::new(rho)),
        }
    }

    /// Closed form where one exists, otherwise integration from
    /// [`default_initial_conditions`].
    pub fn solve_default(cfg: &OscillatorConfig, t_end: f64, tol: f64) -> Result<Self, ErmakovError> {
        if let Ok(es) = Self::solve_static(cfg) {
            return Ok(es);
        }
        if let Ok(es) = Self::solve_caldirola_kanai(cfg) {
            return Ok(es);
        }
        let (rho0, rho_dot0) = default_initial_conditions(cfg)?;
        Self::solve_numeric(cfg, rho0, rho_dot0, t_end, tol)
    }

    pub fn source(&self) -> ErmakovSource {
        match self.repr {
            Repr::Static { .. } => ErmakovSource::ClosedFormStatic,
            Repr::CaldirolaKanai { .. } => ErmakovSource::ClosedFormCK,
            Repr::Numeric { .. } => ErmakovSource::Numeric,
            Repr::Prescribed(_) => ErmakovSource::Prescribed,
        }
    }

    pub fn cfg(&self) -> &OscillatorConfig {
        &self.cfg
    }

    /// Time span on which `ρ` is known; `None` for closed forms.
    pub fn span(&self) -> Option<(f64, f64)> {
        match &self.repr {
            Repr::Numeric { sol } => Some((sol.t_start(), sol.t_end())),
            _ => None,
        }
    }

    fn check(&self, t: f64) -> Result<(), ErmakovError> {
        if !t.is_finite() {
            return Err(ErmakovError::Parameter(format!("time must be finite, got {t}")));
        }
        if let Some((lo, hi)) = self.span() {
            let slack = 1e-12 * (hi - lo);
            if t < lo - slack || t > hi + slack {
                return Err(ErmakovError::OutOfSpan { t, lo, hi });
            }
        }
        Ok(())
    }

    /// `[ρ, ρ̇, ρ̈]` at `t` without range checks.
    pub(crate) fn jet(&self, t: f64) -> [f64; 3] {
        match &self.repr {
            Repr::Static { rho } => [*rho, 0.0, 0.0],
            Repr::CaldirolaKanai { amp, gamma } => {
                let rho = amp * (-0.5 * gamma * t).exp();
                [rho, -0.5 * gamma * rho, 0.25 * gamma * gamma * rho]
            }
            Repr::Numeric { sol } => {
                let [r, rd] = sol.eval(t);
                [r, rd, rhs(&self.cfg, t, r, rd)]
            }
            Repr::Prescribed(g) => g(t),
        }
    }

    pub fn rho(&self, t: f64) -> Result<f64, ErmakovError> {
        self.check(t)?;
        Ok(self.jet(t)[0])
    }

    pub fn rho_dot(&self, t: f64) -> Result<f64, ErmakovError> {
        self.check(t)?;
        Ok(self.jet(t)[1])
    }

    /// `ρ̈`; for numeric solutions this is the equation's right-hand side.
    pub fn rho_ddot(&self, t: f64) -> Result<f64, ErmakovError> {
        self.check(t)?;
        Ok(self.jet(t)[2])
    }

    pub fn frame(&self, t: f64) -> Result<Frame, ErmakovError> {
        self.check(t)?;
        let [rho, rho_dot, _] = self.jet(t);
        Ok(Frame {
            t,
            m: self.cfg.m,
            nu: self.cfg.nu,
            f: self.cfg.f(t)?,
            eta: self.cfg.eta(t)?,
            omega: self.cfg.omega(t)?,
            rho,
            rho_dot,
        })
    }

    /// Scaled residual
    /// `|ρ̈ + ηρ̇ + ω²ρ − ν²f²/(m²ρ³)| / max(1, ν²f²/(m²ρ³))`.
    ///
    /// For numeric solutions `ρ̈` is taken by a fourth-order finite
    /// difference of the interpolated `ρ̇`, so the check does not reduce to
    /// the equation that generated the trajectory.
    pub fn residual(&self, t: f64) -> Result<f64, ErmakovError> {
        let fr = self.frame(t)?;
        let rho_ddot = match &self.repr {
            Repr::Numeric { sol } => {
                let (lo, hi) = (sol.t_start(), sol.t_end());
                let h = (1e-2f64).min((hi - lo) / 8.0);
                let g = |s: f64| sol.eval(s)[1];
                if t - 2.0 * h < lo {
                    let g = |k: f64| g(t + k * h);
                    (-25.0 * g(0.0) + 48.0 * g(1.0) - 36.0 * g(2.0) + 16.0 * g(3.0) - 3.0 * g(4.0))
                        / (12.0 * h)
                } else if t + 2.0 * h > hi {
                    let g = |k: f64| g(t - k * h);
                    -(-25.0 * g(0.0) + 48.0 * g(1.0) - 36.0 * g(2.0) + 16.0 * g(3.0)
                        - 3.0 * g(4.0))
                        / (12.0 * h)
                } else {
                    (-g(t + 2.0 * h) + 8.0 * g(t + h) - 8.0 * g(t - h) + g(t - 2.0 * h))
                        / (12.0 * h)
                }
            }
            _ => self.jet(t)[2],
        };
        let source = (fr.nu * fr.f / fr.m).powi(2) / fr.rho.powi(3);
        let lhs = rho_ddot + fr.eta * fr.rho_dot + fr.omega * fr.omega * fr.rho;
        Ok((lhs - source).abs() / source.max(1.0))
    }

    /// Largest scaled residual and smallest `ρ` over `n + 1` equally spaced
    /// times on `[0, t_end]`.
    pub fn scan(&self, t_end: f64, n: usize) -> Result<(f64, f64), ErmakovError> {
        let n = n.max(1);
        let mut worst: f64 = 0.0;
        let mut min_rho = f64::INFINITY;
        for k in 0..=n {
            let t = t_end * k as f64 / n as f64;
            worst = worst.max(self.residual(t)?);
            min_rho = min_rho.min(self.rho(t)?);
        }
        Ok((worst, min_rho))
    }
}

/// `ρ₀ = √(ν/(mω(0)))`, `ρ̇₀ = −η(0)ρ₀/2`.
pub fn default_initial_conditions(cfg: &OscillatorConfig) -> Result<(f64, f64), ErmakovError> {
    let w0 = cfg.omega(0.0)?;
    if !(w0 > 0.0) {
        return Err(ErmakovError::Parameter(
            "default initial conditions need omega(0) > 0".into(),
        ));
    }
    let rho0 = (cfg.nu / (cfg.m * w0)).sqrt();
    Ok((rho0, -0.5 * cfg.eta(0.0)? * rho0))
}
