use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lr2d_cli::commands::{self, CoherentFamily};
use lr2d_cli::output::Csv;
use lr2d_cli::{parse_config, verify, CliError, RunConfig};
use lr2d_core::ModeIndex;

#[derive(Parser)]
#[command(name = "lr2d", version, about = "Quantum 2D damped oscillator via Lewis-Riesenfeld invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output CSV path (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Overrides `time.t_end`.
    #[arg(long, global = true)]
    t_end: Option<f64>,
    /// Overrides the mode as `n_plus,n_minus`.
    #[arg(long, global = true)]
    mode: Option<String>,
    /// Overrides `time.tol`.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Classical trajectory, integrated and (where available) closed form.
    Classical,
    /// Auxiliary function rho(t) and its residual.
    Ermakov,
    /// Invariant eigenvalues, energies and phases at t_end.
    Spectrum,
    /// Polar samples of one mode.
    Wavefunction,
    /// Dispersions and uncertainty products over time.
    Uncertainty,
    /// Barut-Girardello coherent-state coefficients.
    CoherentBg,
    /// Perelomov coherent-state coefficients.
    CoherentPerelomov,
    /// Run the invariant checks; exits nonzero if any fails.
    Verify,
}

fn parse_mode(s: &str) -> Result<ModeIndex, CliError> {
    let bad = || CliError::Usage(format!("--mode expects n_plus,n_minus, got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    Ok(ModeIndex::new(a, b))
}

fn load(cli: &Cli) -> Result<RunConfig, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Usage("--config <path> is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut cfg = parse_config(&text)?;
    if let Some(t) = cli.t_end {
        if t <= 0.0 || !t.is_finite() {
            return Err(CliError::Usage(format!("--t-end must be positive, got {t}")));
        }
        cfg.time.t_end = t;
    }
    if let Some(tol) = cli.tol {
        if tol <= 0.0 || !tol.is_finite() {
            return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
        }
        cfg.time.tol = tol;
    }
    if let Some(m) = &cli.mode {
        cfg.mode = parse_mode(m)?;
    }
    Ok(cfg)
}

fn emit(cli: &Cli, csv: &Csv) -> Result<(), CliError> {
    let text = csv.render();
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                // A closed reader (e.g. `| head`) is not an error.
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io {
                    path: "<stdout>".into(),
                    source: e,
                }),
                _ => Ok(()),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let cfg = load(cli)?;
    let csv = match cli.command {
        Command::Classical => commands::classical(&cfg)?,
        Command::Ermakov => commands::ermakov(&cfg)?,
        Command::Spectrum => commands::spectrum(&cfg)?,
        Command::Wavefunction => commands::wavefunction(&cfg)?,
        Command::Uncertainty => commands::uncertainty(&cfg)?,
        Command::CoherentBg => commands::coherent(&cfg, CoherentFamily::BarutGirardello)?,
        Command::CoherentPerelomov => commands::coherent(&cfg, CoherentFamily::Perelomov)?,
        Command::Verify => {
            let (csv, ok) = verify::verify(&cfg)?;
            emit(cli, &csv)?;
            if !ok {
                eprintln!("ERROR verify: one or more checks failed");
            }
            return Ok(ok);
        }
    };
    emit(cli, &csv)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("ERROR {}: {msg}", e.module());
            ExitCode::FAILURE
        }
    }
}
