#![allow(dead_code)]

use lr2d_core::ermakov::ErmakovSolution;
use lr2d_core::profiles::{FrequencyProfile, FrictionProfile, OscillatorConfig};

pub fn unit_static() -> ErmakovSolution {
    let cfg = OscillatorConfig::static_oscillator(1.0, 1.0, 1.0).unwrap();
    ErmakovSolution::solve_static(&cfg).unwrap()
}

pub fn unit_ck() -> ErmakovSolution {
    let cfg = OscillatorConfig::caldirola_kanai(1.0, 1.0, 1.0, 1.0).unwrap();
    ErmakovSolution::solve_caldirola_kanai(&cfg).unwrap()
}

/// {Unit, ExponentialDecay} × {Constant, ExpHalf, Exp}.
pub fn profile_matrix() -> Vec<(String, OscillatorConfig)> {
    let gamma = 0.4;
    let mut out = Vec::new();
    for (fname, friction) in [
        ("unit", FrictionProfile::Unit),
        ("decay", FrictionProfile::exponential_decay(gamma).unwrap()),
    ] {
        for (wname, frequency) in [
            ("constant", FrequencyProfile::constant(1.3).unwrap()),
            ("exp_half", FrequencyProfile::exp_half(1.3, gamma).unwrap()),
            ("exp", FrequencyProfile::exp(1.3, gamma).unwrap()),
        ] {
            let cfg = OscillatorConfig::new(1.2, 0.9, friction.clone(), frequency).unwrap();
            out.push((format!("{fname}/{wname}"), cfg));
        }
    }
    out
}

/// Numeric Ermakov solution on `[0, t_end]` from the default initial data.
pub fn numeric(cfg: &OscillatorConfig, t_end: f64) -> ErmakovSolution {
    let (r0, rd0) = lr2d_core::ermakov::default_initial_conditions(cfg).unwrap();
    ErmakovSolution::solve_numeric(cfg, r0, rd0, t_end, 1e-12).unwrap()
}
