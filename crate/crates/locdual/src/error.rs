//! Errors of the command-line layer and their machine-readable codes.

use locdual_core::Error as CoreError;
use thiserror::Error;

use crate::parse::ParseError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at {0}")]
    Parse(ParseError),
    #[error("section has {found} components but --vars is {expected}")]
    Arity { expected: usize, found: usize },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Args(#[from] clap::Error),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Domain(#[from] CoreError),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "PARSE_ERROR",
            CliError::Arity { .. } => "ARITY_ERROR",
            CliError::Usage(_) | CliError::Args(_) => "USAGE_ERROR",
            CliError::Config(_) => "CONFIG_ERROR",
            CliError::Io(_) => "IO_ERROR",
            CliError::Domain(e) => match e {
                CoreError::NonIsolatedZero => "NON_ISOLATED_ZERO",
                CoreError::NotQuasiHomogeneous => "NOT_QUASI_HOMOGENEOUS",
                CoreError::SingularOnSphere => "SINGULAR_ON_SPHERE",
                CoreError::ResolutionTooCoarse { .. } => "RESOLUTION_TOO_COARSE",
                CoreError::NotInIdeal => "NOT_IN_IDEAL",
                CoreError::ConventionMismatch(_) => "CONVENTION_MISMATCH",
                CoreError::UnsupportedDimension(_) => "UNSUPPORTED_DIMENSION",
                CoreError::EmptyDegreeRange => "EMPTY_DEGREE_RANGE",
                _ => "INVALID_ARGUMENT",
            },
        }
    }

    /// 2 for malformed input, 1 for mathematical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::Io(_) => 1,
            _ => 2,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}
