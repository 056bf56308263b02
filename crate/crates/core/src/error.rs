use thiserror::Error;

/// Errors raised by the transform, approximation and simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A model or tandem parameter violates its contract.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// The argument lies outside the domain of the function (pole, non-finite value).
    #[error("domain error: {0}")]
    Domain(String),
    /// An iterative or series method failed to reach its accuracy target.
    #[error("numerical failure: {0}")]
    Numeric(String),
    /// A principal-branch evaluation would cross its cut.
    #[error("branch cut crossed: {0}")]
    BranchCut(String),
    /// Inconsistent run configuration (simulation horizon, batches, grids).
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    /// True for errors caused by user input rather than numerics.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::Parameter(_) | Error::Config(_) | Error::Domain(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(v: crate::C64, what: &str) -> Result<crate::C64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("{what} is not finite ({v})")))
    }
}
