//! Special functions and quadrature rules.
//!
//! Everything here is real-valued except [`bessel_sum`], which evaluates the
//! entire series `Σ wⁿ/(n! Γ(n+μ+1))` at complex argument.

mod bessel;
mod gamma;
mod poly;
mod quadrature;

pub use bessel::{bessel_i, bessel_j, bessel_k, bessel_sum, bessel_y01};
pub use gamma::log_gamma;
pub(crate) use gamma::{ln_factorial, ln_gamma};
pub use poly::{hermite, laguerre, laguerre_second_derivative, laguerre_with_derivative};
pub use quadrature::{
    gauss_laguerre_rule, gauss_legendre_rule, integrate_adaptive, trapezoid_rule, Integral,
    QuadratureKind, QuadratureRule,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFnError {
    #[error("{function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },
    #[error("{function}: result overflows f64 ({detail})")]
    Overflow {
        function: &'static str,
        detail: String,
    },
    #[error("{what} did not converge: {detail}")]
    Convergence { what: &'static str, detail: String },
}
