use super::SpecFnError;

/// Natural logarithm of the Gamma function for `x > 0`.
///
/// Backed by the musl-derived `lgamma` in `libm`, which keeps full relative
/// precision near the zeros at `x = 1` and `x = 2`.
pub fn log_gamma(x: f64) -> Result<f64, SpecFnError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecFnError::Domain {
            function: "log_gamma",
            detail: format!("argument must be positive and finite, got {x}"),
        });
    }
    Ok(libm::lgamma(x))
}

/// `ln Γ(x)` for arguments the caller has already validated as positive.
pub(crate) fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    libm::lgamma(x)
}

/// `ln(n!)`, exact for the small integers that dominate our basis sizes.
pub(crate) fn ln_factorial(n: usize) -> f64 {
    if n < 2 {
        0.0
    } else {
        ln_gamma(n as f64 + 1.0)
    }
}
