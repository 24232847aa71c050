//! Friction and frequency profiles `f(t)`, `η(t) = −d/dt ln f(t)`, `ω(t)`.
//!
//! Analytic profiles are defined for every finite `t`. Tabulated profiles are
//! defined only on their sample range and never extrapolate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProfileError {
    #[error("{profile} profile queried at t = {t}, outside its sample range [{lo}, {hi}]")]
    OutOfRange {
        profile: &'static str,
        t: f64,
        lo: f64,
        hi: f64,
    },
    #[error("invalid {field}: {detail}")]
    Invalid { field: &'static str, detail: String },
}

fn invalid(field: &'static str, detail: impl Into<String>) -> ProfileError {
    ProfileError::Invalid {
        field,
        detail: detail.into(),
    }
}

/// Uniformly sampled function with monotone (Fritsch–Carlson) cubic
/// Hermite interpolation.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    t0: f64,
    dt: f64,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl Table {
    pub fn new(t0: f64, dt: f64, values: Vec<f64>) -> Result<Self, ProfileError> {
        if !t0.is_finite() {
            return Err(invalid("t0", format!("must be finite, got {t0}")));
        }
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(invalid("dt", format!("must be positive, got {dt}")));
        }
        if values.len() < 2 {
            return Err(invalid("values", "need at least two samples"));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(invalid("values", format!("non-finite sample {v}")));
        }
        let slopes = pchip_slopes(&values, dt);
        Ok(Table {
            t0,
            dt,
            values,
            slopes,
        })
    }

    pub fn t_start(&self) -> f64 {
        self.t0
    }

    pub fn t_end(&self) -> f64 {
        self.t0 + self.dt * (self.values.len() - 1) as f64
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Interpolated value, clamped to the sample range.
    fn eval_clamped(&self, t: f64) -> f64 {
        let n = self.values.len();
        let x = ((t - self.t0) / self.dt).clamp(0.0, (n - 1) as f64);
        let k = (x.floor() as usize).min(n - 2);
        let s = x - k as f64;
        let (y0, y1) = (self.values[k], self.values[k + 1]);
        let (m0, m1) = (self.slopes[k] * self.dt, self.slopes[k + 1] * self.dt);
        let s2 = s * s;
        let s3 = s2 * s;
        (2.0 * s3 - 3.0 * s2 + 1.0) * y0
            + (s3 - 2.0 * s2 + s) * m0
            + (-2.0 * s3 + 3.0 * s2) * y1
            + (s3 - s2) * m1
    }
}

fn pchip_slopes(y: &[f64], h: f64) -> Vec<f64> {
    let n = y.len();
    let d: Vec<f64> = y.windows(2).map(|w| (w[1] - w[0]) / h).collect();
    if n == 2 {
        return vec![d[0], d[0]];
    }
    let mut m = vec![0.0; n];
    for k in 1..n - 1 {
        let (a, b) = (d[k - 1], d[k]);
        m[k] = if a * b <= 0.0 {
            0.0
        } else {
            2.0 / (1.0 / a + 1.0 / b)
        };
    }
    let edge = |d0: f64, d1: f64| {
        let m = 0.5 * (3.0 * d0 - d1);
        if m.signum() != d0.signum() {
            0.0
        } else if d0.signum() != d1.signum() && m.abs() > 3.0 * d0.abs() {
            3.0 * d0
        } else {
            m
        }
    };
    m[0] = edge(d[0], d[1]);
    m[n - 1] = edge(d[n - 2], d[n - 3]);
    m
}

#[derive(Debug, Clone, PartialEq)]
pub enum FrictionProfile {
    /// `f ≡ 1`.
    Unit,
    /// `f(t) = e^{−γt}`.
    ExponentialDecay { gamma: f64 },
    /// Sampled `f(t)`, starting at `t = 0` with `f(0) = 1`.
    Tabulated(Table),
}

impl FrictionProfile {
    pub fn exponential_decay(gamma: f64) -> Result<Self, ProfileError> {
        check_rate(gamma)?;
        Ok(FrictionProfile::ExponentialDecay { gamma })
    }

    pub fn tabulated(table: Table) -> Result<Self, ProfileError> {
        if table.t_start() != 0.0 {
            return Err(invalid(
                "friction.t0",
                format!("friction table must start at t = 0, got {}", table.t_start()),
            ));
        }
        if (table.values()[0] - 1.0).abs() > 1e-9 {
            return Err(invalid(
                "friction.values",
                format!("f(0) must equal 1, got {}", table.values()[0]),
            ));
        }
        if let Some(v) = table.values().iter().find(|&&v| !(v > 0.0)) {
            return Err(invalid(
                "friction.values",
                format!("f must stay positive, got {v}"),
            ));
        }
        Ok(FrictionProfile::Tabulated(table))
    }

    /// `f(t)`.
    pub fn value(&self, t: f64) -> Result<f64, ProfileError> {
        self.check(t)?;
        Ok(self.value_clamped(t))
    }

    /// `η(t) = −d/dt ln f(t)`.
    pub fn coefficient(&self, t: f64) -> Result<f64, ProfileError> {
        self.check(t)?;
        Ok(self.coefficient_clamped(t))
    }

    /// Largest time span the profile can answer for, if bounded.
    pub fn range(&self) -> Option<(f64, f64)> {
        match self {
            FrictionProfile::Tabulated(tab) => Some((tab.t_start(), tab.t_end())),
            _ => None,
        }
    }

    fn check(&self, t: f64) -> Result<(), ProfileError> {
        check_time("friction", t, self.range())
    }

    pub(crate) fn value_clamped(&self, t: f64) -> f64 {
        match self {
            FrictionProfile::Unit => 1.0,
            FrictionProfile::ExponentialDecay { gamma } => (-gamma * t).exp(),
            FrictionProfile::Tabulated(tab) => tab.eval_clamped(t),
        }
    }

    pub(crate) fn coefficient_clamped(&self, t: f64) -> f64 {
        match self {
            FrictionProfile::Unit => 0.0,
            FrictionProfile::ExponentialDecay { gamma } => *gamma,
            FrictionProfile::Tabulated(tab) => {
                -log_derivative(|s| tab.eval_clamped(s).ln(), t, tab.dt, tab.t_start(), tab.t_end())
            }
        }
    }
}

/// Second-order finite-difference derivative of `g` at `t` with step `h`,
/// one-sided within one step of either end of `[lo, hi]`.
fn log_derivative<G: Fn(f64) -> f64>(g: G, t: f64, h: f64, lo: f64, hi: f64) -> f64 {
    let t = t.clamp(lo, hi);
    if t - h < lo {
        (-3.0 * g(t) + 4.0 * g(t + h) - g(t + 2.0 * h)) / (2.0 * h)
    } else if t + h > hi {
        (3.0 * g(t) - 4.0 * g(t - h) + g(t - 2.0 * h)) / (2.0 * h)
    } else {
        (g(t + h) - g(t - h)) / (2.0 * h)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FrequencyProfile {
    Constant { omega0: f64 },
    /// `ω(t) = ω₀ e^{−γt/2}`.
    ExpHalf { omega0: f64, gamma: f64 },
    /// `ω(t) = ω₀ e^{−γt}`.
    Exp { omega0: f64, gamma: f64 },
    /// Sampled `ω(t) ≥ 0`.
    Tabulated(Table),
}

impl FrequencyProfile {
    pub fn constant(omega0: f64) -> Result<Self, ProfileError> {
        check_omega0(omega0)?;
        Ok(FrequencyProfile::Constant { omega0 })
    }

    pub fn exp_half(omega0: f64, gamma: f64) -> Result<Self, ProfileError> {
        check_omega0(omega0)?;
        check_rate(gamma)?;
        Ok(FrequencyProfile::ExpHalf { omega0, gamma })
    }

    pub fn exp(omega0: f64, gamma: f64) -> Result<Self, ProfileError> {
        check_omega0(omega0)?;
        check_rate(gamma)?;
        Ok(FrequencyProfile::Exp { omega0, gamma })
    }

    pub fn tabulated(table: Table) -> Result<Self, ProfileError> {
        if let Some(v) = table.values().iter().find(|&&v| v < 0.0) {
            return Err(invalid(
                "frequency.values",
                format!("ω must be nonnegative, got {v}"),
            ));
        }
        Ok(FrequencyProfile::Tabulated(table))
    }

    /// `ω(t)`.
    pub fn value(&self, t: f64) -> Result<f64, ProfileError> {
        check_time("frequency", t, self.range())?;
        Ok(self.value_clamped(t))
    }

    pub fn range(&self) -> Option<(f64, f64)> {
        match self {
            FrequencyProfile::Tabulated(tab) => Some((tab.t_start(), tab.t_end())),
            _ => None,
        }
    }

    pub(crate) fn value_clamped(&self, t: f64) -> f64 {
        match self {
            FrequencyProfile::Constant { omega0 } => *omega0,
            FrequencyProfile::ExpHalf { omega0, gamma } => omega0 * (-0.5 * gamma * t).exp(),
            FrequencyProfile::Exp { omega0, gamma } => omega0 * (-gamma * t).exp(),
            // Monotone interpolation of nonnegative data stays nonnegative.
            FrequencyProfile::Tabulated(tab) => tab.eval_clamped(t).max(0.0),
        }
    }
}

fn check_rate(gamma: f64) -> Result<(), ProfileError> {
    if gamma >= 0.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(invalid(
            "gamma",
            format!("rate must be finite and nonnegative, got {gamma}"),
        ))
    }
}

fn check_omega0(omega0: f64) -> Result<(), ProfileError> {
    if omega0 > 0.0 && omega0.is_finite() {
        Ok(())
    } else {
        Err(invalid(
            "omega0",
            format!("must be positive and finite, got {omega0}"),
        ))
    }
}

fn check_time(profile: &'static str, t: f64, range: Option<(f64, f64)>) -> Result<(), ProfileError> {
    if !t.is_finite() {
        return Err(invalid("t", format!("time must be finite, got {t}")));
    }
    match range {
        Some((lo, hi)) => {
            let slack = 1e-12 * (hi - lo).abs().max(1.0);
            if t < lo - slack || t > hi + slack {
                Err(ProfileError::OutOfRange { profile, t, lo, hi })
            } else {
                Ok(())
            }
        }
        None => Ok(()),
    }
}

/// Mass, invariant scale and the two profiles. `ℏ = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillatorConfig {
    pub m: f64,
    pub nu: f64,
    pub friction: FrictionProfile,
    pub frequency: FrequencyProfile,
}

impl OscillatorConfig {
    pub fn new(
        m: f64,
        nu: f64,
        friction: FrictionProfile,
        frequency: FrequencyProfile,
    ) -> Result<Self, ProfileError> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(invalid("m", format!("mass must be positive, got {m}")));
        }
        if !(nu > 0.0) || !nu.is_finite() {
            return Err(invalid("nu", format!("must be positive, got {nu}")));
        }
        Ok(OscillatorConfig {
            m,
            nu,
            friction,
            frequency,
        })
    }

    /// Undamped oscillator with constant frequency.
    pub fn static_oscillator(m: f64, nu: f64, omega0: f64) -> Result<Self, ProfileError> {
        Self::new(m, nu, FrictionProfile::Unit, FrequencyProfile::constant(omega0)?)
    }

    /// Caldirola–Kanai: `f = e^{−γt}` with constant frequency.
    pub fn caldirola_kanai(m: f64, nu: f64, omega0: f64, gamma: f64) -> Result<Self, ProfileError> {
        Self::new(
            m,
            nu,
            FrictionProfile::exponential_decay(gamma)?,
            FrequencyProfile::constant(omega0)?,
        )
    }

    pub fn f(&self, t: f64) -> Result<f64, ProfileError> {
        self.friction.value(t)
    }

    pub fn eta(&self, t: f64) -> Result<f64, ProfileError> {
        self.friction.coefficient(t)
    }

    pub fn omega(&self, t: f64) -> Result<f64, ProfileError> {
        self.frequency.value(t)
    }

    /// Intersection of the profile ranges; `None` when both are analytic.
    pub fn range(&self) -> Option<(f64, f64)> {
        match (self.friction.range(), self.frequency.range()) {
            (None, None) => None,
            (Some(r), None) | (None, Some(r)) => Some(r),
            (Some(a), Some(b)) => Some((a.0.max(b.0), a.1.min(b.1))),
        }
    }

    /// Errors unless both profiles can answer on all of `[t0, t1]`.
    pub fn check_span(&self, t0: f64, t1: f64) -> Result<(), ProfileError> {
        self.friction.value(t0)?;
        self.friction.value(t1)?;
        self.frequency.value(t0)?;
        self.frequency.value(t1)?;
        Ok(())
    }

    pub(crate) fn f_at(&self, t: f64) -> f64 {
        self.friction.value_clamped(t)
    }

    pub(crate) fn eta_at(&self, t: f64) -> f64 {
        self.friction.coefficient_clamped(t)
    }

    pub(crate) fn omega_at(&self, t: f64) -> f64 {
        self.frequency.value_clamped(t)
    }
}
