use std::f64::consts::PI;

use lr2d_core::ermakov::ErmakovSolution;
use lr2d_core::profiles::OscillatorConfig;
use lr2d_core::spectra::{
    eigenfunction_cartesian, eigenfunction_polar, gram_matrix, lr_phase, norm_check,
    schrodinger_residual, schrodinger_solution, CartesianIndex, ModeIndex, PolarGrid,
    ResidualOptions, WaveSample,
};
use num_complex::Complex64;

fn ck() -> ErmakovSolution {
    let cfg = OscillatorConfig::caldirola_kanai(1.0, 1.0, 1.0, 1.0).unwrap();
    ErmakovSolution::solve_caldirola_kanai(&cfg).unwrap()
}

fn unit_static() -> ErmakovSolution {
    let cfg = OscillatorConfig::static_oscillator(1.0, 1.0, 1.0).unwrap();
    ErmakovSolution::solve_static(&cfg).unwrap()
}

#[test]
fn gram_matrix_is_identity() {
    let modes = ModeIndex::up_to(4);
    for es in [unit_static(), ck()] {
        let g = gram_matrix(&es, &modes, 0.8).unwrap();
        for a in 0..modes.len() {
            for b in 0..modes.len() {
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((g[(a, b)] - want).norm() < 1e-7, "{a} {b} {}", g[(a, b)]);
            }
        }
    }
}

#[test]
fn schrodinger_residual_is_small() {
    for es in [unit_static(), ck()] {
        for mode in [ModeIndex::new(0, 0), ModeIndex::new(1, 0)] {
            let r = schrodinger_residual(&es, mode, 0.5, ResidualOptions::default()).unwrap();
            assert!(r < 1e-4, "{:?} {mode:?} {r}", es.source());
        }
    }
}

#[test]
fn higher_mode_residual_is_small() {
    let es = unit_static();
    let r = schrodinger_residual(&es, ModeIndex::new(2, 1), 1.0, ResidualOptions::default())
        .unwrap();
    assert!(r < 1e-4);
}

#[test]
fn static_phase_is_energy_times_time() {
    let es = unit_static();
    for mode in ModeIndex::up_to(3) {
        let th = lr_phase(&es, mode, 2.0, 1e-12).unwrap();
        assert!((th + 2.0 * (mode.total() + 1) as f64).abs() < 1e-10);
    }
}

#[test]
fn ck_phase_grows_linearly() {
    // f/ρ² = mΩ/ν with Ω = √(ω₀² − γ²/4).
    let es = ck();
    let omega = (0.75f64).sqrt();
    let th = lr_phase(&es, ModeIndex::new(0, 0), 4.0, 1e-12).unwrap();
    assert!((th + omega * 4.0).abs() < 1e-10);
}

#[test]
fn solution_has_unit_phase_factor() {
    let es = ck();
    let mode = ModeIndex::new(2, 0);
    for &(r, a, t) in &[(0.3, 0.1, 0.0), (1.2, 2.0, 1.5), (0.7, -1.0, 3.0)] {
        let psi = schrodinger_solution(&es, mode, r, a, t, 1e-12).unwrap();
        let phi = eigenfunction_polar(&es, mode, r, a, t).unwrap();
        assert!((psi.norm() - phi.norm()).abs() < 1e-15);
        if t == 0.0 {
            assert_eq!(psi, phi);
        }
    }
    let es = unit_static();
    let psi = schrodinger_solution(&es, ModeIndex::new(0, 0), 0.0, 0.0, 2.0, 1e-12).unwrap();
    let want = Complex64::from_polar(PI.powf(-0.5), -2.0);
    assert!((psi - want).norm() < 1e-12);
}

#[test]
fn polar_and_cartesian_forms_agree() {
    let es = ck();
    let t = 0.9;
    let mut s: u64 = 12345;
    let mut next = || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (s >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut fixed: Option<(Complex64, Complex64)> = None;
    for _ in 0..100 {
        let (x1, x2) = (4.0 * next() - 2.0, 4.0 * next() - 2.0);
        let (r, a) = (x1.hypot(x2), x2.atan2(x1));
        let c00 = eigenfunction_cartesian(&es, CartesianIndex::new(0, 0), x1, x2, t).unwrap();
        let p00 = eigenfunction_polar(&es, ModeIndex::new(0, 0), r, a, t).unwrap();
        assert!((c00 - p00).norm() < 1e-10);
        let c10 = eigenfunction_cartesian(&es, CartesianIndex::new(1, 0), x1, x2, t).unwrap();
        let c01 = eigenfunction_cartesian(&es, CartesianIndex::new(0, 1), x1, x2, t).unwrap();
        let i = Complex64::i();
        let plus = (c10 + i * c01) / 2f64.sqrt();
        let minus = (c10 - i * c01) / 2f64.sqrt();
        let p10 = eigenfunction_polar(&es, ModeIndex::new(1, 0), r, a, t).unwrap();
        let p01 = eigenfunction_polar(&es, ModeIndex::new(0, 1), r, a, t).unwrap();
        if p10.norm() < 1e-3 {
            continue;
        }
        let ratios = (plus / p10, minus / p01);
        match fixed {
            None => fixed = Some(ratios),
            Some((u, v)) => {
                assert!((ratios.0 - u).norm() < 1e-10);
                assert!((ratios.1 - v).norm() < 1e-10);
            }
        }
    }
    let (u, v) = fixed.unwrap();
    assert!((u.norm() - 1.0).abs() < 1e-12 && (v.norm() - 1.0).abs() < 1e-12);
}

#[test]
fn angular_derivative_is_ell_times_value() {
    // Spectral −i∂_α over 16 equally spaced angles.
    let es = ck();
    let n = 16;
    for mode in ModeIndex::up_to(4) {
        let vals: Vec<Complex64> = (0..n)
            .map(|k| {
                let a = 2.0 * PI * k as f64 / n as f64;
                eigenfunction_polar(&es, mode, 0.9, a, 0.4).unwrap()
            })
            .collect();
        for (k, &v) in vals.iter().enumerate() {
            let mut d = Complex64::new(0.0, 0.0);
            for q in -(n as i64) / 2 + 1..(n as i64) / 2 {
                let coeff: Complex64 = vals
                    .iter()
                    .enumerate()
                    .map(|(j, w)| w * Complex64::from_polar(1.0, -2.0 * PI * (q * j as i64) as f64 / n as f64))
                    .sum::<Complex64>()
                    / n as f64;
                let a = 2.0 * PI * k as f64 / n as f64;
                d += coeff * q as f64 * Complex64::from_polar(1.0, q as f64 * a);
            }
            assert!((d - mode.ell() as f64 * v).norm() < 1e-12);
        }
    }
}

#[test]
fn norms_on_covering_grid() {
    let es = unit_static();
    let grid = PolarGrid::gauss_legendre(8.0, 32, 8, 8).unwrap();
    let ws = WaveSample::polar(&es, ModeIndex::new(2, 1), grid, 1.0, 1e-12).unwrap();
    let nc = norm_check(&ws);
    assert!(nc.covered);
    assert!((nc.value - 1.0).abs() < 1e-7);
}
