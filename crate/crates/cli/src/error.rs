use hypertree_spectra::doc::DocError;
use hypertree_spectra::hypertree::HypertreeError;
use hypertree_spectra::matching::MatchingError;
use hypertree_spectra::normal::NormalError;
use hypertree_spectra::poly::RootError;
use hypertree_spectra::spectra::SpectraError;
use hypertree_spectra::tensor::TensorError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {0}: {1}")]
    Io(String, std::io::Error),
    #[error("malformed report or matrix: {0}")]
    Report(String),
    #[error(transparent)]
    Doc(#[from] DocError),
    #[error(transparent)]
    Hypertree(#[from] HypertreeError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Normal(#[from] NormalError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

impl CliError {
    /// 2 for bad input or a failed domain precondition, 3 when a numerical
    /// method gave up.
    pub fn exit_code(&self) -> u8 {
        let numeric = match self {
            CliError::Spectra(e) => e.is_numeric(),
            CliError::Root(RootError::NoConvergence { .. }) => true,
            CliError::Normal(NormalError::Tensor(TensorError::NoConvergence { .. })) => true,
            _ => false,
        };
        if numeric {
            3
        } else {
            2
        }
    }
}
