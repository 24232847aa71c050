//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs as a plain binary under `cargo test`.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use lr2d_core::classical::{closed_form, fit_constants, integrate_eom, uniform_grid, RegimeKind, RegimeParams};
use lr2d_core::coherent::{
    bg_expand, bg_identity_check, bg_overlap, perelomov_expand, perelomov_identity_check,
    perelomov_overlap,
};
use lr2d_core::ermakov::default_initial_conditions;
use lr2d_core::matrices::{basis_index, build_rep, invariance_residual, Observable};
use lr2d_core::specfn::{
    bessel_i, bessel_j, bessel_sum, gauss_laguerre_rule, laguerre, laguerre_second_derivative,
    laguerre_with_derivative, log_gamma,
};
use lr2d_core::spectra::{
    angular_momentum_eigenvalue, gram_matrix, hamiltonian_expectation, invariant_eigenvalue,
    lr_phase, schrodinger_residual, ResidualOptions,
};
use lr2d_core::su11::{
    basis_samples, check_algebra, k_differential_apply, k_minus, Ladder, RadialGrid,
};
use lr2d_core::uncertainty::{dispersions_closed_form, dispersions_quadrature};
use lr2d_core::{ErmakovSolution, FrequencyProfile, FrictionProfile, ModeIndex, OscillatorConfig};
use num_complex::Complex64;

type Outcome = Result<String, String>;

/// Name, check and runtime limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn unit_static() -> ErmakovSolution {
    let cfg = OscillatorConfig::static_oscillator(1.0, 1.0, 1.0).unwrap();
    ErmakovSolution::solve_static(&cfg).unwrap()
}

fn ck_config() -> OscillatorConfig {
    OscillatorConfig::caldirola_kanai(1.0, 1.0, 1.0, 1.0).unwrap()
}

fn unit_ck() -> ErmakovSolution {
    ErmakovSolution::solve_caldirola_kanai(&ck_config()).unwrap()
}

/// {unit, decay} friction × {constant, exp_half, exp} frequency.
fn profile_matrix() -> Vec<(String, OscillatorConfig)> {
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

fn numeric(cfg: &OscillatorConfig, t_end: f64) -> ErmakovSolution {
    let (r0, rd0) = default_initial_conditions(cfg).unwrap();
    ErmakovSolution::solve_numeric(cfg, r0, rd0, t_end, 1e-12).unwrap()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn classical_regimes() -> Outcome {
    let cases = [
        ("overdamped", RegimeKind::OverDamped, 3.0, 1.0, FrequencyProfile::constant(1.0)),
        ("underdamped", RegimeKind::UnderDamped, 0.5, 1.0, FrequencyProfile::constant(1.0)),
        ("critical", RegimeKind::CriticallyDamped, 2.0, 1.0, FrequencyProfile::constant(1.0)),
        ("exp_half", RegimeKind::ExpHalfFrequency, 0.5, 1.0, FrequencyProfile::exp_half(1.0, 0.5)),
        ("exp", RegimeKind::ExpFrequency, 0.5, 1.0, FrequencyProfile::exp(1.0, 0.5)),
    ];
    let z0 = Complex64::new(1.0, 0.5);
    let zd0 = Complex64::new(-0.3, 0.2);
    let mut worst: f64 = 0.0;
    let mut slowest = Duration::ZERO;
    for (name, kind, gamma, omega0, freq) in cases {
        let start = Instant::now();
        let cfg = OscillatorConfig::new(
            1.0,
            1.0,
            FrictionProfile::exponential_decay(gamma).map_err(|e| e.to_string())?,
            freq.map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        let grid = uniform_grid(5.0, 500);
        let traj = integrate_eom(&cfg, z0, zd0, &grid, 1e-10).map_err(|e| format!("{name}: {e}"))?;
        let params = RegimeParams { gamma, omega0 };
        let reg = fit_constants(kind, params, z0, zd0).map_err(|e| format!("{name}: {e}"))?;
        for (k, &t) in grid.iter().enumerate() {
            let c = closed_form(&reg, params, t).map_err(|e| e.to_string())?;
            worst = worst.max((traj.z[k] - c).norm());
        }
        slowest = slowest.max(start.elapsed());
    }
    check(
        worst <= 1e-7 && slowest < Duration::from_secs(1),
        format!("max |z_num - z_closed| = {worst:.3e}, slowest regime {slowest:.2?}"),
    )
}

fn ermakov_residuals() -> Outcome {
    let mut cases = vec![("static".to_string(), unit_static()), ("ck".to_string(), unit_ck())];
    for (name, cfg) in profile_matrix() {
        cases.push((name, numeric(&cfg, 3.0)));
    }
    let mut worst: f64 = 0.0;
    let mut who = String::new();
    for (name, es) in &cases {
        let (r, _) = es.scan(3.0, 300).map_err(|e| format!("{name}: {e}"))?;
        if r > worst {
            worst = r;
            who = name.clone();
        }
    }
    // the closed-form CK amplitude is the exact ansatz √(ν/(mΩ))
    let ck = unit_ck();
    let want = (1.0 / (0.75f64).sqrt()).sqrt() * (-0.5f64 * 2.0).exp();
    let ansatz = (ck.rho(2.0).map_err(|e| e.to_string())? - want).abs();
    check(
        worst <= 1e-6 && ansatz < 1e-14,
        format!("worst scaled residual {worst:.3e} ({who}), CK ansatz error {ansatz:.1e}"),
    )
}

fn invariance() -> Outcome {
    let s = invariance_residual(&unit_static(), 0.3, 1e-5, 8).map_err(|e| e.to_string())?;
    let c = invariance_residual(&unit_ck(), 0.7, 1e-5, 8).map_err(|e| e.to_string())?;
    let wrong = ErmakovSolution::prescribed(&ck_config(), |_| [1.0, 0.0, 0.0]);
    let w = invariance_residual(&wrong, 0.7, 1e-5, 8).map_err(|e| e.to_string())?;
    check(
        s <= 1e-6 && c <= 1e-6 && w >= 1e-2,
        format!("static {s:.2e}, CK {c:.2e}, rho=1 sentinel {w:.2e}"),
    )
}

fn spectra() -> Outcome {
    let nu = 1.7;
    let cfg = OscillatorConfig::static_oscillator(1.0, nu, 1.0).unwrap();
    let cases = vec![
        ("static", ErmakovSolution::solve_static(&cfg).unwrap(), 0.0),
        ("ck", unit_ck(), 0.9),
        ("decay/exp_half", numeric(&profile_matrix()[4].1, 2.0), 1.1),
    ];
    let cutoff = 8;
    let mut eig_err: f64 = 0.0;
    let mut degeneracy_ok = true;
    let mut lz_err: f64 = 0.0;
    let mut h_err: f64 = 0.0;
    for (_, es, t) in &cases {
        let nu = es.cfg().nu;
        let rep = build_rep(es, *t, cutoff).map_err(|e| e.to_string())?;
        let ev = rep.invariant_spectrum();
        let mut want = Vec::new();
        for np in 0..=cutoff - 2 {
            for nm in 0..=cutoff - 2 {
                want.push(invariant_eigenvalue(nu, ModeIndex::new(np, nm)));
            }
        }
        want.sort_by(|a, b| a.total_cmp(b));
        if ev.len() != want.len() {
            return Err(format!("{} eigenvalues, expected {}", ev.len(), want.len()));
        }
        for (a, b) in ev.iter().zip(&want) {
            eig_err = eig_err.max((a - b).abs());
        }
        for k in 0..=cutoff - 2 {
            let level = nu * (k + 1) as f64;
            let count = ev.iter().filter(|&&e| (e - level).abs() < 1e-8).count();
            degeneracy_ok &= count == k + 1;
        }
        let h_phase = rep.hamiltonian_from_phase_space();
        for mode in ModeIndex::up_to(4) {
            let lz = rep.expectation(Observable::Lz, mode).map_err(|e| e.to_string())?;
            lz_err = lz_err.max((lz - angular_momentum_eigenvalue(mode) as f64).norm());
            let k = basis_index(cutoff, mode);
            let closed = hamiltonian_expectation(es, mode, *t).map_err(|e| e.to_string())?;
            h_err = h_err.max((h_phase[(k, k)] - closed).norm() / closed.abs());
        }
    }
    check(
        eig_err <= 1e-10 && degeneracy_ok && lz_err == 0.0 && h_err <= 1e-9,
        format!(
            "eigenvalue error {eig_err:.2e}, degeneracies {}, Lz error {lz_err:e}, H relative error {h_err:.2e}",
            if degeneracy_ok { "ok" } else { "wrong" }
        ),
    )
}

fn orthonormality() -> Outcome {
    let modes = ModeIndex::up_to(4);
    let mut worst: f64 = 0.0;
    for es in [unit_static(), unit_ck()] {
        let g = gram_matrix(&es, &modes, 0.8).map_err(|e| e.to_string())?;
        for a in 0..modes.len() {
            for b in 0..modes.len() {
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((g[(a, b)] - want).norm());
            }
        }
    }
    check(worst <= 1e-7, format!("max |G - I| = {worst:.2e} over {} modes", modes.len()))
}

fn schrodinger() -> Outcome {
    let mut worst: f64 = 0.0;
    for es in [unit_static(), unit_ck()] {
        for mode in [ModeIndex::new(0, 0), ModeIndex::new(1, 0)] {
            let r = schrodinger_residual(&es, mode, 0.5, ResidualOptions::default())
                .map_err(|e| e.to_string())?;
            worst = worst.max(r);
        }
    }
    check(worst <= 1e-4, format!("max relative residual {worst:.2e} on 256^2"))
}

fn phase_closed_forms() -> Outcome {
    let t = 2.0;
    let mut worst: f64 = 0.0;
    let mut ratio = 0.0;
    let omega = (0.75f64).sqrt();
    for (es, w) in [(unit_static(), 1.0), (unit_ck(), omega)] {
        for mode in ModeIndex::up_to(3) {
            let k = (mode.total() + 1) as f64;
            let got = lr_phase(&es, mode, t, 1e-13).map_err(|e| e.to_string())?;
            let want = -0.5 * w * k * t;
            worst = worst.max((got - want).abs());
            ratio = got / want;
        }
    }
    check(
        worst <= 1e-9,
        format!("max |theta - expected| = {worst:.3e}; measured/expected = {ratio:.12}"),
    )
}

/// Modes with `n + |ℓ| ≤ 4`.
fn radial_modes() -> Vec<ModeIndex> {
    let mut out = Vec::new();
    for n in 0..=4usize {
        let a = 4 - n as i64;
        for ell in -a..=a {
            out.push(ModeIndex::from_radial(n, ell));
        }
    }
    out
}

fn uncertainty() -> Outcome {
    let mut cases = vec![("static".to_string(), unit_static()), ("ck".to_string(), unit_ck())];
    for (name, cfg) in profile_matrix().into_iter().step_by(2) {
        cases.push((name, numeric(&cfg, 2.0)));
    }
    let modes = radial_modes();
    let mut rel_err: f64 = 0.0;
    for (name, es) in &cases {
        for &mode in &modes {
            let c = dispersions_closed_form(es, mode, 1.6).map_err(|e| format!("{name}: {e}"))?;
            let q = dispersions_quadrature(es, mode, 1.6).map_err(|e| format!("{name}: {e}"))?;
            for (a, b) in [(q.dx1, c.dx1), (q.dx2, c.dx2), (q.dp1, c.dp1), (q.dp2, c.dp2)] {
                rel_err = rel_err.max((a - b).abs() / b);
            }
        }
    }
    let mut min_product = f64::INFINITY;
    let mut kinetic_err: f64 = 0.0;
    for (_, es) in &cases {
        for k in 0..=40 {
            let t = 0.05 * k as f64;
            for &mode in &modes {
                let r = dispersions_closed_form(es, mode, t).map_err(|e| e.to_string())?;
                min_product = min_product.min(r.canonical_product());
                kinetic_err = kinetic_err.max(
                    (r.kinetic_product() - r.f * r.canonical_product()).abs() / r.kinetic_product(),
                );
            }
        }
    }
    let ground = dispersions_closed_form(&unit_static(), ModeIndex::new(0, 0), 1.0)
        .map_err(|e| e.to_string())?
        .canonical_product();
    let saturation = (ground - 0.5).abs();
    check(
        rel_err <= 1e-6 && min_product >= 0.5 * (1.0 - 1e-9) && kinetic_err <= 4.0 * f64::EPSILON && saturation <= 1e-12,
        format!(
            "closed vs quadrature {rel_err:.2e}, min product {min_product:.17}, kinetic scaling {kinetic_err:.1e}, ground {saturation:.1e}"
        ),
    )
}

fn su11() -> Outcome {
    let mut failures = 0;
    for ell in 0..=5 {
        for n in 0..=10 {
            if !check_algebra(ell, n).all() {
                failures += 1;
            }
        }
    }
    let varpi = unit_ck().frame(0.8).map_err(|e| e.to_string())?.varpi();
    let grid = RadialGrid::new(512, 12.0).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for ell in 0..=5u32 {
        for n in 0..=10usize {
            let phi = basis_samples(varpi, ell, n, &grid);
            let scale = phi.iter().map(|c| c.norm()).fold(1.0, f64::max);
            let lowered = k_differential_apply(varpi, ell, Ladder::Lower, &phi, &grid, n)
                .map_err(|e| e.to_string())?;
            let raised = k_differential_apply(varpi, ell, Ladder::Raise, &phi, &grid, n)
                .map_err(|e| e.to_string())?;
            let up = basis_samples(varpi, ell, n + 1, &grid);
            let cu = (((n + 1) * (n + ell as usize + 1)) as f64).sqrt();
            for (a, b) in raised.iter().zip(&up) {
                worst = worst.max((a - b * cu).norm() / scale);
            }
            if n > 0 {
                let down = basis_samples(varpi, ell, n - 1, &grid);
                let cd = ((n * (n + ell as usize)) as f64).sqrt();
                for (a, b) in lowered.iter().zip(&down) {
                    worst = worst.max((a - b * cd).norm() / scale);
                }
            } else {
                worst = worst.max(lowered.iter().map(|c| c.norm()).fold(0.0, f64::max) / scale);
            }
        }
    }
    check(
        failures == 0 && worst <= 1e-7,
        format!("{failures} exact-algebra failures, differential vs index {worst:.2e}"),
    )
}

fn coherent() -> Outcome {
    let c = |re, im| Complex64::new(re, im);
    let mut eig: f64 = 0.0;
    let mut norm: f64 = 0.0;
    let mut overlap: f64 = 0.0;
    let mut identity: f64 = 0.0;
    for ell in 0..=3u32 {
        for z in [c(0.7, 0.2), c(-1.5, 2.0), c(3.0, -0.5)] {
            let s = bg_expand(z, ell).map_err(|e| e.to_string())?;
            norm = norm.max((s.norm_sqr() - 1.0).abs());
            let lowered = k_minus(&s.to_radial_state());
            for n in 0..s.truncation() {
                let want = z * s.coefficients[n];
                eig = eig.max((lowered.coefficient(n) - want).norm() / want.norm());
            }
        }
        for eta in [c(0.5, 0.0), c(0.3, -0.6), c(-0.8, 0.1)] {
            let s = perelomov_expand(eta, ell).map_err(|e| e.to_string())?;
            norm = norm.max((s.norm_sqr() - 1.0).abs());
        }
        for (z1, z2) in [(c(1.0, 0.0), c(-1.0, 0.0)), (c(0.4, 1.2), c(-0.9, 0.3))] {
            let a = bg_expand(z1, ell).map_err(|e| e.to_string())?;
            let b = bg_expand(z2, ell).map_err(|e| e.to_string())?;
            let closed = bg_overlap(z1, z2, ell).map_err(|e| e.to_string())?;
            overlap = overlap.max((a.inner(&b).map_err(|e| e.to_string())? - closed).norm());
        }
        for (e1, e2) in [(c(0.5, 0.0), c(-0.5, 0.0)), (c(0.2, 0.5), c(-0.4, 0.1))] {
            let a = perelomov_expand(e1, ell).map_err(|e| e.to_string())?;
            let b = perelomov_expand(e2, ell).map_err(|e| e.to_string())?;
            let closed = perelomov_overlap(e1, e2, ell).map_err(|e| e.to_string())?;
            overlap = overlap.max((a.inner(&b).map_err(|e| e.to_string())? - closed).norm());
        }
        for n in 0..=10 {
            let v = bg_identity_check(ell, n, n).map_err(|e| e.to_string())?;
            identity = identity.max((v - 1.0).abs());
            if ell > 0 {
                let v = perelomov_identity_check(ell, n, n).map_err(|e| e.to_string())?;
                identity = identity.max((v - 1.0).abs());
            }
        }
    }
    check(
        eig <= 1e-10 && norm <= 1e-10 && overlap <= 1e-9 && identity <= 1e-7,
        format!(
            "K- eigen {eig:.1e}, norms {norm:.1e}, overlaps {overlap:.1e}, identity diagonals {identity:.1e}"
        ),
    )
}

fn special_functions() -> Outcome {
    let mut orth: f64 = 0.0;
    for ell in [0.0, 1.0, 2.0, 5.0] {
        let rule = gauss_laguerre_rule(64, ell).map_err(|e| e.to_string())?;
        for n in 0..=12 {
            let norm = (log_gamma(ell + n as f64 + 1.0).unwrap() - log_gamma(n as f64 + 1.0).unwrap()).exp();
            for m in 0..=12 {
                let v = rule.integrate(|u| laguerre(n, ell, u) * laguerre(m, ell, u));
                let want = if n == m { norm } else { 0.0 };
                orth = orth.max((v - want).abs() / norm);
            }
        }
    }
    let mut ode: f64 = 0.0;
    for k in 1..=50 {
        let u = 40.0 * k as f64 / 51.0;
        for (n, ell) in [(3, 1.0), (8, 0.0), (12, 5.0)] {
            let (l, d1) = laguerre_with_derivative(n, ell, u);
            let d2 = laguerre_second_derivative(n, ell, u);
            ode = ode.max((u * d2 + (ell - u + 1.0) * d1 + n as f64 * l).abs() / (1.0 + l.abs()));
        }
    }
    let mut gen_g: f64 = 0.0;
    let one = Complex64::new(1.0, 0.0);
    for z in [Complex64::new(0.3, 0.0), Complex64::from_polar(0.3, 2.0)] {
        for ell in [0u32, 2] {
            for u in [0.5, 3.0] {
                let mut s = Complex64::new(0.0, 0.0);
                let mut zn = one;
                for n in 0..=60 {
                    s += laguerre(n, ell as f64, u) * zn;
                    zn *= z;
                }
                let closed = (u * z / (z - one)).exp() * (one - z).powi(-(ell as i32) - 1);
                gen_g = gen_g.max((s - closed).norm());
            }
        }
    }
    let mut gen_j: f64 = 0.0;
    for z in [0.5, 2.0] {
        for ell in [0u32, 2] {
            for u in [0.5, 3.0] {
                let l = ell as f64;
                let s: f64 = (0..=60)
                    .map(|n| {
                        (n as f64 * f64::ln(z) - log_gamma(n as f64 + l + 1.0).unwrap()).exp()
                            * laguerre(n, l, u)
                    })
                    .sum();
                let x = (u * z).sqrt();
                let closed = bessel_j(l, 2.0 * x).unwrap() * z.exp() * x.powf(-l);
                gen_j = gen_j.max((s - closed).abs() / closed.abs().max(1.0));
            }
        }
    }
    let mut sum_id: f64 = 0.0;
    for x in [0.5f64, 2.0] {
        for mu in [0.0, 1.0, 3.0] {
            let lhs = bessel_sum(mu, Complex64::new(x * x, 0.0)).unwrap().re;
            let rhs = bessel_i(mu, 2.0 * x).unwrap() / x.powf(mu);
            sum_id = sum_id.max((lhs - rhs).abs() / rhs);
        }
    }
    check(
        orth <= 1e-9 && ode <= 1e-8 && gen_g <= 1e-10 && gen_j <= 1e-9 && sum_id <= 1e-12,
        format!(
            "orthogonality {orth:.1e}, ODE {ode:.1e}, gen(g) {gen_g:.1e}, gen(j) {gen_j:.1e}, Bessel sum {sum_id:.1e}"
        ),
    )
}

fn cli() -> Outcome {
    let dir = std::env::temp_dir().join(format!("lr2d-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let cfg = dir.join("static.toml");
    std::fs::write(
        &cfg,
        "m = 1\nnu = 1\n[friction]\nkind = \"unit\"\n[frequency]\nkind = \"constant\"\nomega0 = 1\n",
    )
    .map_err(|e| e.to_string())?;
    let run = |sub: &str| {
        Command::new(env!("CARGO_BIN_EXE_lr2d"))
            .args([sub, "--config", cfg.to_str().unwrap()])
            .output()
            .map_err(|e| e.to_string())
    };
    let v1 = run("verify")?;
    let v2 = run("verify")?;
    let body = |o: &std::process::Output| {
        String::from_utf8_lossy(&o.stdout)
            .lines()
            .filter(|l| !l.starts_with('#'))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let green = String::from_utf8_lossy(&v1.stdout)
        .lines()
        .skip(2)
        .all(|l| l.ends_with(",PASS"));
    let mut same = body(&v1) == body(&v2);
    for sub in ["spectrum", "uncertainty", "wavefunction"] {
        same &= body(&run(sub)?) == body(&run(sub)?);
    }
    let _ = std::fs::remove_dir_all(&dir);
    check(
        v1.status.success() && green && same,
        format!(
            "verify exit {:?}, all checks green: {green}, deterministic bodies: {same}",
            v1.status.code()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("classical closed forms vs integrator", classical_regimes, 5),
        ("Ermakov residual", ermakov_residuals, 2),
        ("invariance of I", invariance, 5),
        ("invariant spectrum, Lz, <H>", spectra, 5),
        ("orthonormality", orthonormality, 1),
        ("Schrodinger residual", schrodinger, 30),
        ("phase closed forms", phase_closed_forms, 1),
        ("uncertainty relations", uncertainty, 10),
        ("su(1,1) algebra", su11, 2),
        ("coherent states", coherent, 20),
        ("special functions", special_functions, 2),
        ("CLI verify and determinism", cli, 60),
    ];
    let suite = Instant::now();
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(*limit);
        let (status, detail) = match outcome {
            Ok(d) if in_time => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; exceeded {limit} s")),
            Err(d) => ("FAIL", d),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} {:>2} {name} [{elapsed:.2?}]: {detail}", i + 1);
    }
    let total = suite.elapsed();
    if total >= Duration::from_secs(60) {
        failed += 1;
        println!("FAIL suite exceeded 60 s");
    }
    println!("{} of {} criteria passed in {total:.2?}", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
