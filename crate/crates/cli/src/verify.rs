//! `verify`: the invariant suite evaluated on the configured oscillator.

use lr2d_core::classical::{closed_form, fit_constants, integrate_eom, regime_for, uniform_grid};
use lr2d_core::coherent::{bg_expand, perelomov_expand};
use lr2d_core::matrices::{basis_index, build_rep, invariance_residual, Observable};
use lr2d_core::profiles::{FrequencyProfile, FrictionProfile};
use lr2d_core::spectra::{
    angular_momentum_eigenvalue, gram_matrix, hamiltonian_expectation, invariant_eigenvalue, lr_phase, schrodinger_residual,
    ResidualOptions,
};
use lr2d_core::su11::{check_algebra, k_minus};
use lr2d_core::uncertainty::{dispersions_closed_form, dispersions_quadrature};
use lr2d_core::ModeIndex;
use num_complex::Complex64;

use crate::commands::solve_ermakov;
use crate::config::RunConfig;
use crate::output::{num, Csv};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    AtMost,
    AtLeast,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
    pub bound: Bound,
}

impl Check {
    fn at_most(name: &'static str, value: f64, tolerance: f64) -> Self {
        Check {
            name,
            value,
            tolerance,
            bound: Bound::AtMost,
        }
    }

    fn at_least(name: &'static str, value: f64, tolerance: f64) -> Self {
        Check {
            name,
            value,
            tolerance,
            bound: Bound::AtLeast,
        }
    }

    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::AtMost => self.value <= self.tolerance,
            Bound::AtLeast => self.value >= self.tolerance,
        }
    }
}

const CUTOFF: usize = 8;

pub fn run_checks(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    let osc = &cfg.oscillator;
    let t_end = cfg.time.t_end;
    let t_mid = 0.5 * t_end;
    let es = solve_ermakov(cfg, t_end)?;
    let mut out = Vec::new();

    out.push(Check::at_most("ermakov_residual", es.scan(t_end, 200)?.0, 1e-6));

    if let Some((kind, params)) = regime_for(osc) {
        let [x1, x2] = cfg.classical.x0;
        let [v1, v2] = cfg.classical.v0;
        let z0 = Complex64::new(x2, x1);
        let zd0 = Complex64::new(v2, v1);
        let grid = uniform_grid(t_end, 200);
        let traj = integrate_eom(osc, z0, zd0, &grid, 1e-10)?;
        let reg = fit_constants(kind, params, z0, zd0)?;
        let mut worst: f64 = 0.0;
        for (k, &t) in grid.iter().enumerate() {
            worst = worst.max((traj.z[k] - closed_form(&reg, params, t)?).norm());
        }
        out.push(Check::at_most("classical_closed_form", worst, 1e-7));
    }

    out.push(Check::at_most(
        "invariance_residual",
        invariance_residual(&es, t_mid, 1e-5, CUTOFF)?,
        1e-6,
    ));

    let rep = build_rep(&es, t_mid, CUTOFF)?;
    let mut want: Vec<f64> = Vec::new();
    for np in 0..=CUTOFF - 2 {
        for nm in 0..=CUTOFF - 2 {
            want.push(invariant_eigenvalue(osc.nu, ModeIndex::new(np, nm)));
        }
    }
    want.sort_by(|a, b| a.total_cmp(b));
    let ev = rep.invariant_spectrum();
    let spectrum_err = if ev.len() == want.len() {
        ev.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    out.push(Check::at_most("invariant_spectrum", spectrum_err, 1e-10));

    // Ĥ assembled from x̂, p̂ rather than from the ladder coefficients.
    let h_phase = rep.hamiltonian_from_phase_space();
    let mut lz_err: f64 = 0.0;
    let mut h_err: f64 = 0.0;
    for mode in ModeIndex::up_to(3) {
        let lz = rep.expectation(Observable::Lz, mode)?;
        lz_err = lz_err.max((lz - angular_momentum_eigenvalue(mode) as f64).norm());
        let k = basis_index(CUTOFF, mode);
        let h = h_phase[(k, k)];
        let closed = hamiltonian_expectation(&es, mode, t_mid)?;
        h_err = h_err.max((h - closed).norm() / closed.abs());
    }
    out.push(Check::at_most("lz_exact", lz_err, 0.0));
    out.push(Check::at_most("hamiltonian_matrix", h_err, 1e-9));

    let modes = ModeIndex::up_to(4);
    let g = gram_matrix(&es, &modes, t_mid)?;
    let mut gram_err: f64 = 0.0;
    for a in 0..modes.len() {
        for b in 0..modes.len() {
            let want = if a == b { 1.0 } else { 0.0 };
            gram_err = gram_err.max((g[(a, b)] - want).norm());
        }
    }
    out.push(Check::at_most("gram_identity", gram_err, 1e-7));

    out.push(Check::at_most(
        "schrodinger_residual",
        schrodinger_residual(&es, cfg.mode, t_mid, ResidualOptions::default())?,
        1e-4,
    ));

    let closed = dispersions_closed_form(&es, cfg.mode, t_mid)?;
    let quad = dispersions_quadrature(&es, cfg.mode, t_mid)?;
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
    let unc_err = [
        rel(quad.dx1, closed.dx1),
        rel(quad.dx2, closed.dx2),
        rel(quad.dp1, closed.dp1),
        rel(quad.dp2, closed.dp2),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    out.push(Check::at_most("uncertainty_quadrature", unc_err, 1e-6));

    let mut min_product = f64::INFINITY;
    let mut kinetic_err: f64 = 0.0;
    for t in uniform_grid(t_end, 200) {
        let r = dispersions_closed_form(&es, cfg.mode, t)?;
        min_product = min_product.min(r.canonical_product());
        kinetic_err = kinetic_err
            .max((r.kinetic_product() - r.f * r.canonical_product()).abs() / r.kinetic_product());
    }
    out.push(Check::at_least("canonical_product_floor", min_product, 0.5 * (1.0 - 1e-12)));
    out.push(Check::at_most("kinetic_scaling", kinetic_err, 4.0 * f64::EPSILON));

    let mut algebra_failures = 0.0;
    for ell in 0..=5 {
        for n in 0..=10 {
            if !check_algebra(ell, n).all() {
                algebra_failures += 1.0;
            }
        }
    }
    out.push(Check::at_most("su11_algebra_failures", algebra_failures, 0.0));

    let label = Complex64::new(cfg.coherent.re, cfg.coherent.im);
    let ell = cfg.coherent.ell;
    let bg = bg_expand(label, ell)?;
    let lowered = k_minus(&bg.to_radial_state());
    let mut eigen_err: f64 = 0.0;
    for n in 0..bg.truncation() {
        let want = label * bg.coefficients[n];
        eigen_err = eigen_err.max((lowered.coefficient(n) - want).norm() / want.norm().max(1e-300));
    }
    out.push(Check::at_most("bg_lowering_eigenvector", eigen_err, 1e-10));
    out.push(Check::at_most("bg_norm", (bg.norm_sqr() - 1.0).abs(), 1e-10));
    if label.norm() < 0.95 {
        let p = perelomov_expand(label, ell)?;
        out.push(Check::at_most("perelomov_norm", (p.norm_sqr() - 1.0).abs(), 1e-10));
    }

    // For a static oscillator the phase must be −E t with E the energy.
    if let (FrictionProfile::Unit, FrequencyProfile::Constant { .. }) =
        (&osc.friction, &osc.frequency)
    {
        let energy = hamiltonian_expectation(&es, cfg.mode, 0.0)?;
        let theta = lr_phase(&es, cfg.mode, t_end, 1e-12)?;
        out.push(Check::at_most("static_phase", (theta + energy * t_end).abs(), 1e-9));
    }

    Ok(out)
}

pub fn verify(cfg: &RunConfig) -> Result<(Csv, bool), CliError> {
    let checks = run_checks(cfg)?;
    let mut out = Csv::new("verify", &cfg.hash, cfg.time.tol, &["check", "value", "tolerance", "status"]);
    let mut all = true;
    for c in &checks {
        let ok = c.passed();
        all &= ok;
        let tol = match c.bound {
            Bound::AtMost => format!("<={}", num(c.tolerance)),
            Bound::AtLeast => format!(">={}", num(c.tolerance)),
        };
        out.push(vec![
            c.name.to_string(),
            num(c.value),
            tol,
            if ok { "PASS" } else { "FAIL" }.to_string(),
        ]);
    }
    Ok((out, all))
}
