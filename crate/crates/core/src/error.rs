use thiserror::Error;

use crate::classical::ClassicalError;
use crate::coherent::CoherentError;
use crate::ermakov::ErmakovError;
use crate::matrices::MatricesError;
use crate::ode::OdeError;
use crate::profiles::ProfileError;
use crate::spectra::SpectraError;
use crate::specfn::SpecFnError;
use crate::su11::Su11Error;
use crate::uncertainty::UncertaintyError;

/// Any error raised by the library, tagged with the module it came from.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Profiles(#[from] ProfileError),
    #[error(transparent)]
    SpecFn(#[from] SpecFnError),
    #[error(transparent)]
    Ode(#[from] OdeError),
    #[error(transparent)]
    Classical(#[from] ClassicalError),
    #[error(transparent)]
    Ermakov(#[from] ErmakovError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Matrices(#[from] MatricesError),
    #[error(transparent)]
    Uncertainty(#[from] UncertaintyError),
    #[error(transparent)]
    Su11(#[from] Su11Error),
    #[error(transparent)]
    Coherent(#[from] CoherentError),
}

impl Error {
    /// Name of the originating module.
    pub fn module(&self) -> &'static str {
        match self {
            Error::Profiles(_) => "profiles",
            Error::SpecFn(_) => "specfn",
            Error::Ode(_) => "ode",
            Error::Classical(_) => "classical",
            Error::Ermakov(_) => "ermakov",
            Error::Spectra(_) => "spectra",
            Error::Matrices(_) => "matrices",
            Error::Uncertainty(_) => "uncertainty",
            Error::Su11(_) => "su11",
            Error::Coherent(_) => "coherent",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
