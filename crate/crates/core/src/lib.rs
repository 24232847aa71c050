//! Lewis–Riesenfeld quantization of the two-dimensional harmonic oscillator
//! with time-dependent friction and frequency.
//!
//! The pipeline runs profiles → Ermakov auxiliary `ρ(t)` → invariant
//! eigenstates and phases → operator, uncertainty and coherent-state
//! diagnostics.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod classical;
pub mod coherent;
pub mod ermakov;
pub mod error;
pub mod matrices;
pub mod ode;
pub mod profiles;
pub mod specfn;
pub mod spectra;
pub mod su11;
pub mod uncertainty;

pub use error::{Error, Result};
pub use ermakov::{ErmakovSolution, Frame};
pub use profiles::{FrequencyProfile, FrictionProfile, OscillatorConfig};
pub use spectra::{CartesianIndex, ModeIndex};
