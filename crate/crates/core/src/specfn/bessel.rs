use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::ln_gamma;
use super::quadrature::integrate_adaptive;
use super::SpecFnError;

fn check_order(function: &'static str, order: f64) -> Result<(), SpecFnError> {
    if order >= 0.0 && order.is_finite() {
        Ok(())
    } else {
        Err(SpecFnError::Domain {
            function,
            detail: format!("order must be finite and nonnegative, got {order}"),
        })
    }
}

/// Leading series term `(x/2)^ν / Γ(ν+1)`, with the `x = 0` limits.
fn leading_term(order: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if order == 0.0 { 1.0 } else { 0.0 };
    }
    (order * (0.5 * x).ln() - ln_gamma(order + 1.0)).exp()
}

/// Below this argument the alternating power series of `J_ν` loses at most
/// a few digits to cancellation.
const J_SERIES_LIMIT: f64 = 8.0;

/// Bessel function of the first kind `J_ν(x)` for `ν ≥ 0`, `x ≥ 0`.
///
/// Power series for `x ≤ 8`; beyond that the Schläfli integral
/// `(1/π)∫₀^π cos(νθ − x sin θ)dθ − (sin νπ/π)∫₀^∞ e^{−x sinh t − νt}dt`.
pub fn bessel_j(order: f64, x: f64) -> Result<f64, SpecFnError> {
    check_order("bessel_j", order)?;
    if !(x >= 0.0) || !x.is_finite() {
        return Err(SpecFnError::Domain {
            function: "bessel_j",
            detail: format!("argument must be finite and nonnegative, got {x}"),
        });
    }
    if x <= J_SERIES_LIMIT {
        let q = -0.25 * x * x;
        let mut term = leading_term(order, x);
        let mut sum = term;
        for k in 0..200 {
            let kf = k as f64;
            term *= q / ((kf + 1.0) * (kf + order + 1.0));
            sum += term;
            if term.abs() <= 1e-17 * sum.abs() && kf > 0.5 * x {
                break;
            }
        }
        return Ok(sum);
    }
    let osc = integrate_adaptive(
        |th| (order * th - x * th.sin()).cos(),
        0.0,
        PI,
        1e-15,
        0.0,
    )?;
    let mut value = osc.value / PI;
    let s = (order * PI).sin();
    if s.abs() > 1e-15 {
        // e^{−x sinh t} is below 1e-300 once x sinh t > 690.
        let upper = (700.0 / x).asinh();
        let tail = integrate_adaptive(
            |t| (-x * t.sinh() - order * t).exp(),
            0.0,
            upper,
            1e-16,
            0.0,
        )?;
        value -= s / PI * tail.value;
    }
    Ok(value)
}

/// `(Y₀(x), Y₁(x))`, Bessel functions of the second kind, for `x > 0`.
pub fn bessel_y01(x: f64) -> Result<(f64, f64), SpecFnError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecFnError::Domain {
            function: "bessel_y01",
            detail: format!("argument must be positive and finite, got {x}"),
        });
    }
    Ok((libm::y0(x), libm::y1(x)))
}

/// Modified Bessel function of the first kind `I_ν(x)` from its defining
/// series `Σ (x/2)^{2n+ν}/(n! Γ(n+ν+1))`.
pub fn bessel_i(order: f64, x: f64) -> Result<f64, SpecFnError> {
    check_order("bessel_i", order)?;
    if !(x >= 0.0) || !x.is_finite() {
        return Err(SpecFnError::Domain {
            function: "bessel_i",
            detail: format!("argument must be finite and nonnegative, got {x}"),
        });
    }
    let q = 0.25 * x * x;
    let mut term = leading_term(order, x);
    let mut sum = term;
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        term *= q / ((kf + 1.0) * (kf + order + 1.0));
        sum += term;
        k += 1;
        if !sum.is_finite() {
            return Err(SpecFnError::Overflow {
                function: "bessel_i",
                detail: format!("order {order}, argument {x}"),
            });
        }
        // Past the peak the ratio is below one and shrinking, so the
        // remaining tail is bounded by a geometric series.
        let ratio = q / ((kf + 2.0) * (kf + order + 2.0));
        if ratio < 1.0 && term <= 1e-17 * sum * (1.0 - ratio) {
            break;
        }
        if term == 0.0 && sum == 0.0 {
            break;
        }
    }
    Ok(sum)
}

/// Modified Bessel function of the second kind `K_ν(x)`, `x > 0`.
///
/// Evaluates `∫₀^∞ e^{−x cosh t} cosh(νt) dt`. The integrand is rescaled by
/// its value near the peak `t* = asinh(ν/x)` and cut off once it has fallen
/// by `e^{−45}`.
pub fn bessel_k(order: f64, x: f64) -> Result<f64, SpecFnError> {
    check_order("bessel_k", order)?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecFnError::Domain {
            function: "bessel_k",
            detail: format!("argument must be positive and finite, got {x}"),
        });
    }
    // ln[e^{−x cosh t} cosh(νt)], written to avoid overflow of cosh.
    let g = |t: f64| {
        let nt = order * t;
        -x * t.cosh() + nt + (-2.0 * nt).exp().ln_1p() - std::f64::consts::LN_2
    };
    let t_star = (order / x).asinh();
    let g_star = g(t_star);
    let mut upper = t_star + 1.0;
    while g(upper) - g_star > -45.0 {
        upper += 1.0 + 0.5 * (upper - t_star);
    }
    let f = |t: f64| (g(t) - g_star).exp();
    let mut total = 0.0;
    if t_star > 0.0 {
        total += integrate_adaptive(f, 0.0, t_star, 0.0, 1e-13)?.value;
    }
    total += integrate_adaptive(f, t_star, upper, 0.0, 1e-13)?.value;
    let value = total * g_star.exp();
    if !value.is_finite() {
        return Err(SpecFnError::Overflow {
            function: "bessel_k",
            detail: format!("order {order}, argument {x}"),
        });
    }
    Ok(value)
}

/// Entire series `S_μ(w) = Σ_{n≥0} wⁿ/(n! Γ(n+μ+1))` at complex `w`.
///
/// For real `x`, `S_μ(x²) = I_μ(2x)/x^μ` and `S_μ(−x²) = J_μ(2x)/x^μ`, so this
/// gives both Bessel kinds without a branch choice for the square root.
pub fn bessel_sum(mu: f64, w: Complex64) -> Result<Complex64, SpecFnError> {
    check_order("bessel_sum", mu)?;
    let mut term = Complex64::new((-ln_gamma(mu + 1.0)).exp(), 0.0);
    let mut sum = term;
    let mut abs_sum = term.norm();
    let aw = w.norm();
    let mut n = 0usize;
    while n < 100_000 {
        let nf = n as f64;
        term *= w / ((nf + 1.0) * (nf + mu + 1.0));
        sum += term;
        abs_sum += term.norm();
        n += 1;
        let ratio = aw / ((nf + 2.0) * (nf + mu + 2.0));
        if ratio < 0.5 && term.norm() <= 1e-17 * abs_sum {
            break;
        }
    }
    if !sum.re.is_finite() || !sum.im.is_finite() {
        return Err(SpecFnError::Overflow {
            function: "bessel_sum",
            detail: format!("order {mu}, argument {w}"),
        });
    }
    Ok(sum)
}
