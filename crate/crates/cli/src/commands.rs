//! Subcommand implementations. Each returns the CSV table it would write.

use std::f64::consts::PI;

use lr2d_core::classical::{
    closed_form, coordinates, fit_constants, integrate_eom, mechanical_energy, regime_for,
    uniform_grid,
};
use lr2d_core::coherent::{bg_expand, perelomov_expand, CoherentError, CoherentExpansion, TAIL_TOLERANCE};
use lr2d_core::spectra::{
    angular_momentum_eigenvalue, eigenfunction_polar, hamiltonian_expectation,
    invariant_eigenvalue, lr_phase, mechanical_energy_expectation, schrodinger_solution,
};
use lr2d_core::uncertainty::dispersions_closed_form;
use lr2d_core::{ErmakovSolution, ModeIndex};
use num_complex::Complex64;

use crate::config::RunConfig;
use crate::output::{num, Csv};
use crate::CliError;

/// Ermakov solution covering `[0, horizon]`: explicit initial data
/// integrate numerically, otherwise closed forms are preferred.
pub fn solve_ermakov(cfg: &RunConfig, horizon: f64) -> Result<ErmakovSolution, CliError> {
    let osc = &cfg.oscillator;
    let es = match cfg.ermakov.initial {
        Some((r0, rd0)) => ErmakovSolution::solve_numeric(osc, r0, rd0, horizon, cfg.time.tol)?,
        None => ErmakovSolution::solve_default(osc, horizon, cfg.time.tol)?,
    };
    Ok(es)
}

fn csv(cfg: &RunConfig, sub: &str, header: &[&str]) -> Csv {
    Csv::new(sub, &cfg.hash, cfg.time.tol, header)
}

pub fn classical(cfg: &RunConfig) -> Result<Csv, CliError> {
    let osc = &cfg.oscillator;
    let [x1, x2] = cfg.classical.x0;
    let [v1, v2] = cfg.classical.v0;
    // z = x₂ + ix₁
    let z0 = Complex64::new(x2, x1);
    let zd0 = Complex64::new(v2, v1);
    let grid = uniform_grid(cfg.time.t_end, cfg.time.samples);
    let traj = integrate_eom(osc, z0, zd0, &grid, cfg.time.tol)?;
    let regime = match regime_for(osc) {
        Some((kind, params)) => Some((fit_constants(kind, params, z0, zd0)?, params)),
        None => None,
    };
    let mut header = vec!["t", "x1", "x2", "v1", "v2", "energy"];
    if regime.is_some() {
        header.extend(["x1_closed", "x2_closed"]);
    }
    let mut out = csv(cfg, "classical", &header);
    for k in 0..traj.len() {
        let t = traj.times[k];
        let x = coordinates(traj.z[k]);
        let v = coordinates(traj.zdot[k]);
        let mut row = vec![
            num(t),
            num(x[0]),
            num(x[1]),
            num(v[0]),
            num(v[1]),
            num(mechanical_energy(osc, x, v, t)?),
        ];
        if let Some((reg, params)) = &regime {
            let xc = coordinates(closed_form(reg, *params, t)?);
            row.extend([num(xc[0]), num(xc[1])]);
        }
        out.push(row);
    }
    Ok(out)
}

pub fn ermakov(cfg: &RunConfig) -> Result<Csv, CliError> {
    let t_end = cfg.time.t_end;
    let es = solve_ermakov(cfg, t_end)?;
    let mut out = csv(cfg, "ermakov", &["t", "rho", "rho_dot", "f", "omega", "residual"]);
    for t in uniform_grid(t_end, cfg.time.samples) {
        let fr = es.frame(t)?;
        out.push(vec![
            num(t),
            num(fr.rho),
            num(fr.rho_dot),
            num(fr.f),
            num(fr.omega),
            num(es.residual(t)?),
        ]);
    }
    Ok(out)
}

pub fn spectrum(cfg: &RunConfig) -> Result<Csv, CliError> {
    let t = cfg.time.t_end;
    let es = solve_ermakov(cfg, t)?;
    let nu = cfg.oscillator.nu;
    let mut out = csv(
        cfg,
        "spectrum",
        &["n_plus", "n_minus", "ell", "invariant", "lz", "energy", "mechanical_energy", "phase"],
    );
    for mode in ModeIndex::up_to(cfg.spectrum.max_total) {
        out.push(vec![
            mode.n_plus.to_string(),
            mode.n_minus.to_string(),
            mode.ell().to_string(),
            num(invariant_eigenvalue(nu, mode)),
            angular_momentum_eigenvalue(mode).to_string(),
            num(hamiltonian_expectation(&es, mode, t)?),
            num(mechanical_energy_expectation(&es, mode, t)?),
            num(lr_phase(&es, mode, t, cfg.time.tol)?),
        ]);
    }
    Ok(out)
}

/// Polar samples of `ψ` at `wavefunction.t` on `(samples + 1)` radii in
/// `[0, r_max]` times `angles` equally spaced angles.
pub fn wavefunction(cfg: &RunConfig) -> Result<Csv, CliError> {
    let t = cfg.wavefunction.t;
    let es = solve_ermakov(cfg, cfg.time.t_end.max(t))?;
    let mode = cfg.mode;
    let fr = es.frame(t)?;
    let r_max = cfg
        .wavefunction
        .r_max
        .unwrap_or((10.0 + 2.0 * ((mode.total() + 1) as f64).sqrt()) * fr.sigma());
    let n = cfg.time.samples;
    let na = cfg.wavefunction.angles;
    let mut out = csv(cfg, "wavefunction", &["r", "alpha", "re", "im", "abs2"]);
    for i in 0..=n {
        let r = r_max * i as f64 / n as f64;
        for k in 0..na {
            let alpha = 2.0 * PI * k as f64 / na as f64;
            let psi = if t == 0.0 {
                eigenfunction_polar(&es, mode, r, alpha, t)?
            } else {
                schrodinger_solution(&es, mode, r, alpha, t, cfg.time.tol)?
            };
            out.push(vec![num(r), num(alpha), num(psi.re), num(psi.im), num(psi.norm_sqr())]);
        }
    }
    Ok(out)
}

pub fn uncertainty(cfg: &RunConfig) -> Result<Csv, CliError> {
    let t_end = cfg.time.t_end;
    let es = solve_ermakov(cfg, t_end)?;
    let mut out = csv(
        cfg,
        "uncertainty",
        &[
            "t",
            "f",
            "dx1",
            "dx2",
            "dp1",
            "dp2",
            "dpk1",
            "dpk2",
            "canonical_product",
            "canonical_bound",
            "kinetic_product",
            "kinetic_bound",
        ],
    );
    for t in uniform_grid(t_end, cfg.time.samples) {
        let r = dispersions_closed_form(&es, cfg.mode, t)?;
        out.push(vec![
            num(t),
            num(r.f),
            num(r.dx1),
            num(r.dx2),
            num(r.dp1),
            num(r.dp2),
            num(r.dpk1),
            num(r.dpk2),
            num(r.canonical_product()),
            num(r.canonical_bound()),
            num(r.kinetic_product()),
            num(r.kinetic_bound()),
        ]);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoherentFamily {
    BarutGirardello,
    Perelomov,
}

/// Applies the optional user truncation, refusing cuts that drop more than
/// the tail tolerance.
fn truncate(mut exp: CoherentExpansion, limit: Option<usize>) -> Result<CoherentExpansion, CliError> {
    if let Some(n) = limit {
        if n + 1 < exp.coefficients.len() {
            let dropped: f64 = exp.coefficients[n + 1..].iter().map(|c| c.norm_sqr()).sum();
            let tail = dropped + exp.tail_bound;
            if tail >= TAIL_TOLERANCE {
                return Err(CoherentError::Truncation(format!(
                    "truncation {n} drops {tail:e} of the norm (limit {TAIL_TOLERANCE:e})"
                ))
                .into());
            }
            exp.coefficients.truncate(n + 1);
            exp.tail_bound = tail;
        }
    }
    Ok(exp)
}

/// Coefficients `cₙ e^{iθ_{n,ℓ}(t)}` of the coherent state at `coherent.t`.
pub fn coherent(cfg: &RunConfig, family: CoherentFamily) -> Result<Csv, CliError> {
    let c = &cfg.coherent;
    let label = Complex64::new(c.re, c.im);
    let (exp, sub) = match family {
        CoherentFamily::BarutGirardello => (bg_expand(label, c.ell)?, "coherent-bg"),
        CoherentFamily::Perelomov => (perelomov_expand(label, c.ell)?, "coherent-perelomov"),
    };
    let exp = truncate(exp, c.truncation)?;
    let theta1 = if c.t == 0.0 {
        0.0
    } else {
        let es = solve_ermakov(cfg, cfg.time.t_end.max(c.t))?;
        lr_phase(&es, ModeIndex::new(0, 0), c.t, cfg.time.tol)?
    };
    let mut out = csv(cfg, sub, &["n", "re", "im", "abs2", "phase"]);
    for (n, &cn) in exp.coefficients.iter().enumerate() {
        let theta = (2 * n + c.ell as usize + 1) as f64 * theta1;
        let v = cn * Complex64::from_polar(1.0, theta);
        out.push(vec![n.to_string(), num(v.re), num(v.im), num(v.norm_sqr()), num(theta)]);
    }
    Ok(out)
}
