//! Library side of the `lr2d` command: configuration, subcommands and the
//! verification runner.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use thiserror::Error;

pub use config::{parse_config, ConfigError, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Core(#[from] lr2d_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// Module tag for the `ERROR <module>:` prefix.
    pub fn module(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Core(e) => e.module(),
            CliError::Io { .. } => "io",
            CliError::Usage(_) => "cli",
        }
    }
}

macro_rules! from_core {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Core(e.into())
            }
        })*
    };
}

from_core!(
    lr2d_core::classical::ClassicalError,
    lr2d_core::coherent::CoherentError,
    lr2d_core::ermakov::ErmakovError,
    lr2d_core::matrices::MatricesError,
    lr2d_core::profiles::ProfileError,
    lr2d_core::spectra::SpectraError,
    lr2d_core::su11::Su11Error,
    lr2d_core::uncertainty::UncertaintyError
);
