//! Dormand–Prince 5(4) integrator with Hairer's continuous extension.
//!
//! The state is a fixed-size array; both the classical equation of motion
//! and the Ermakov equation are four- or two-dimensional real systems.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OdeError {
    #[error("step size underflow at t = {t} (h = {h:e}); the problem looks stiff or singular")]
    StepUnderflow { t: f64, h: f64 },
    #[error("step budget of {steps} exhausted at t = {t}")]
    TooManySteps { t: f64, steps: usize },
    #[error("non-finite state at t = {t}")]
    NonFinite { t: f64 },
    #[error("integration stopped at t = {t}: {reason}")]
    Guard { t: f64, reason: String },
    #[error("invalid integration request: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    /// Used as both absolute and relative tolerance.
    pub tol: f64,
    pub max_steps: usize,
}

impl OdeOptions {
    pub fn with_tol(tol: f64) -> Self {
        OdeOptions {
            tol,
            max_steps: 1_000_000,
        }
    }
}

#[derive(Debug, Clone)]
struct DenseStep<const N: usize> {
    t0: f64,
    h: f64,
    rcont: [[f64; N]; 5],
}

/// Piecewise quartic dense output over every accepted step.
#[derive(Debug, Clone)]
pub struct DenseSolution<const N: usize> {
    steps: Vec<DenseStep<N>>,
    t_start: f64,
    t_end: f64,
}

impl<const N: usize> DenseSolution<N> {
    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    /// Start times of the accepted steps, followed by the final time.
    pub fn mesh(&self) -> Vec<f64> {
        let mut m: Vec<f64> = self.steps.iter().map(|s| s.t0).collect();
        m.push(self.t_end);
        m
    }

    /// Interpolated state. Queries are clamped to `[t_start, t_end]`; callers
    /// validate their spans before asking.
    pub fn eval(&self, t: f64) -> [f64; N] {
        let t = t.clamp(self.t_start, self.t_end);
        let idx = match self
            .steps
            .binary_search_by(|s| s.t0.partial_cmp(&t).unwrap_or(std::cmp::Ordering::Less))
        {
            Ok(i) => i,
            Err(0) => 0,
            Err(i) => i - 1,
        };
        let s = &self.steps[idx.min(self.steps.len() - 1)];
        let theta = (t - s.t0) / s.h;
        let theta1 = 1.0 - theta;
        let r = &s.rcont;
        let mut y = [0.0; N];
        for i in 0..N {
            y[i] = r[0][i]
                + theta * (r[1][i] + theta1 * (r[2][i] + theta * (r[3][i] + theta1 * r[4][i])));
        }
        y
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..N {
            out[i] += h * c * k[i];
        }
    }
    out
}

fn rms_norm<const N: usize>(v: &[f64; N], scale: &[f64; N]) -> f64 {
    let s: f64 = (0..N).map(|i| (v[i] / scale[i]).powi(2)).sum();
    (s / N as f64).sqrt()
}

/// Integrates `y' = f(t, y)` from `t0` to `t_end > t0`.
///
/// `guard` is called after every accepted step and may stop the integration
/// by returning a reason.
pub fn dopri5<const N: usize, F, G>(
    mut f: F,
    t0: f64,
    y0: [f64; N],
    t_end: f64,
    opts: OdeOptions,
    mut guard: G,
) -> Result<DenseSolution<N>, OdeError>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
    G: FnMut(f64, &[f64; N]) -> Option<String>,
{
    if !(t_end > t0) || !t0.is_finite() || !t_end.is_finite() {
        return Err(OdeError::Invalid(format!(
            "need finite t_end > t0, got [{t0}, {t_end}]"
        )));
    }
    if !(opts.tol > 0.0) {
        return Err(OdeError::Invalid(format!(
            "tolerance must be positive, got {}",
            opts.tol
        )));
    }
    if y0.iter().any(|v| !v.is_finite()) {
        return Err(OdeError::NonFinite { t: t0 });
    }
    let atol = opts.tol;
    let rtol = opts.tol;
    let scale = |a: &[f64; N], b: &[f64; N]| {
        let mut s = [0.0; N];
        for i in 0..N {
            s[i] = atol + rtol * a[i].abs().max(b[i].abs());
        }
        s
    };

    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);

    // Initial step from the local Lipschitz estimate.
    let span = t_end - t0;
    let sk = scale(&y, &y);
    let d0 = rms_norm(&y, &sk);
    let d1 = rms_norm(&k1, &sk);
    let h0 = if d0 < 1e-10 || d1 < 1e-10 {
        1e-6
    } else {
        0.01 * d0 / d1
    }
    .min(span);
    let y_probe = axpy(&y, h0, &[(1.0, &k1)]);
    let f_probe = f(t + h0, &y_probe);
    let mut diff = [0.0; N];
    for i in 0..N {
        diff[i] = f_probe[i] - k1[i];
    }
    let d2 = rms_norm(&diff, &sk) / h0;
    let dmax = d1.max(d2);
    let h1 = if dmax <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / dmax).powf(0.2)
    };
    let mut h = (100.0 * h0).min(h1).min(span);

    let mut steps = Vec::new();
    let mut facold: f64 = 1e-4;
    let mut last_rejected = false;
    let mut n_steps = 0usize;
    const SAFE: f64 = 0.9;
    const BETA: f64 = 0.04;
    const EXPO1: f64 = 0.2 - BETA * 0.75;

    loop {
        if n_steps >= opts.max_steps {
            return Err(OdeError::TooManySteps {
                t,
                steps: opts.max_steps,
            });
        }
        if h < 1e-14 * t.abs().max(1.0) {
            return Err(OdeError::StepUnderflow { t, h });
        }
        let last = t + 1.01 * h >= t_end;
        if last {
            h = t_end - t;
        }
        n_steps += 1;

        let y2 = axpy(&y, h, &[(A21, &k1)]);
        let k2 = f(t + C2 * h, &y2);
        let y3 = axpy(&y, h, &[(A31, &k1), (A32, &k2)]);
        let k3 = f(t + C3 * h, &y3);
        let y4 = axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]);
        let k4 = f(t + C4 * h, &y4);
        let y5 = axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]);
        let k5 = f(t + C5 * h, &y5);
        let y6 = axpy(
            &y,
            h,
            &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
        );
        let k6 = f(t + h, &y6);
        let y_new = axpy(
            &y,
            h,
            &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
        );
        let k7 = f(t + h, &y_new);

        let mut err_vec = [0.0; N];
        for i in 0..N {
            err_vec[i] =
                h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        }
        let err = rms_norm(&err_vec, &scale(&y, &y_new));

        if !err.is_finite() {
            h *= 0.1;
            last_rejected = true;
            continue;
        }

        let fac11 = err.powf(EXPO1);
        let fac = (fac11 / facold.powf(BETA) / SAFE).clamp(0.2, 10.0);
        let mut h_new = h / fac;

        if err <= 1.0 {
            facold = err.max(1e-4);
            let mut rcont = [[0.0; N]; 5];
            for i in 0..N {
                let ydiff = y_new[i] - y[i];
                let bspl = h * k1[i] - ydiff;
                rcont[0][i] = y[i];
                rcont[1][i] = ydiff;
                rcont[2][i] = bspl;
                rcont[3][i] = ydiff - h * k7[i] - bspl;
                rcont[4][i] = h
                    * (D1 * k1[i]
                        + D3 * k3[i]
                        + D4 * k4[i]
                        + D5 * k5[i]
                        + D6 * k6[i]
                        + D7 * k7[i]);
            }
            steps.push(DenseStep { t0: t, h, rcont });
            t = if last { t_end } else { t + h };
            y = y_new;
            k1 = k7;
            if y.iter().any(|v| !v.is_finite()) {
                return Err(OdeError::NonFinite { t });
            }
            if let Some(reason) = guard(t, &y) {
                return Err(OdeError::Guard { t, reason });
            }
            if last {
                break;
            }
            if last_rejected {
                h_new = h_new.min(h);
            }
            last_rejected = false;
            h = h_new;
        } else {
            h_new = h / (fac11 / SAFE).min(5.0);
            last_rejected = true;
            h = h_new;
        }
    }

    Ok(DenseSolution {
        steps,
        t_start: t0,
        t_end,
    })
}
