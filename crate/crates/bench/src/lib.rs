//! Fixtures shared by the `kernels` benchmarks.

use lr2d_core::ermakov::default_initial_conditions;
use lr2d_core::{ErmakovSolution, FrequencyProfile, FrictionProfile, OscillatorConfig};
use num_complex::Complex64;

pub fn static_solution() -> ErmakovSolution {
    let cfg = OscillatorConfig::static_oscillator(1.0, 1.0, 1.0).unwrap();
    ErmakovSolution::solve_static(&cfg).unwrap()
}

pub fn caldirola_kanai_solution() -> ErmakovSolution {
    let cfg = OscillatorConfig::caldirola_kanai(1.0, 1.0, 1.0, 1.0).unwrap();
    ErmakovSolution::solve_caldirola_kanai(&cfg).unwrap()
}

/// Decaying friction with `ω = ω₀e^{−γt/2}`, which has no closed-form `ρ`.
pub fn numeric_config() -> OscillatorConfig {
    OscillatorConfig::new(
        1.2,
        0.9,
        FrictionProfile::exponential_decay(0.4).unwrap(),
        FrequencyProfile::exp_half(1.3, 0.4).unwrap(),
    )
    .unwrap()
}

pub fn numeric_solution(t_end: f64) -> ErmakovSolution {
    let cfg = numeric_config();
    let (r0, rd0) = default_initial_conditions(&cfg).unwrap();
    ErmakovSolution::solve_numeric(&cfg, r0, rd0, t_end, 1e-12).unwrap()
}

pub const BG_LABEL: Complex64 = Complex64::new(1.5, -0.7);
pub const PERELOMOV_LABEL: Complex64 = Complex64::new(0.6, 0.3);
