use alloc::string::String;
use core::fmt;

/// Errors raised by the algebraic and numeric engines.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Operands live in different polynomial rings.
    RingMismatch,
    /// The target polynomial is not in the ideal.
    NotInIdeal,
    /// The common zero locus is not the isolated point `0`.
    NonIsolatedZero,
    /// A section component is not weighted homogeneous.
    NotQuasiHomogeneous,
    /// An empty internal-degree interval was requested.
    EmptyDegreeRange,
    /// Section length differs from the number of variables.
    Arity { expected: usize, found: usize },
    /// Forms built over different frames.
    FrameMismatch,
    /// `u` has lower `V`-degree than `theta` in a contraction.
    DegreeTooLow { k: usize, l: usize },
    /// An operand is not of the required pure type.
    WrongType(&'static str),
    /// Two routes that must agree gave different answers.
    ConventionMismatch(String),
    /// `|s|` vanishes (numerically) on the integration sphere.
    SingularOnSphere,
    /// Successive resolutions differ by more than the target tolerance.
    ResolutionTooCoarse { estimate: f64, target: f64 },
    /// The numeric path supports only the listed dimensions.
    UnsupportedDimension(usize),
    /// A parameter outside its documented range.
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RingMismatch => f.write_str("polynomials belong to different rings"),
            Error::NotInIdeal => f.write_str("polynomial is not in the ideal"),
            Error::NonIsolatedZero => f.write_str("section does not have an isolated zero at the origin only"),
            Error::NotQuasiHomogeneous => f.write_str("section is not quasi-homogeneous"),
            Error::EmptyDegreeRange => f.write_str("degree range is empty"),
            Error::Arity { expected, found } => {
                write!(f, "section has {} components, expected {}", found, expected)
            }
            Error::FrameMismatch => f.write_str("forms are defined over different frames"),
            Error::DegreeTooLow { k, l } => write!(f, "cannot contract degree {} by degree {}", k, l),
            Error::WrongType(what) => write!(f, "operand has the wrong type: {}", what),
            Error::ConventionMismatch(msg) => write!(f, "routes disagree: {}", msg),
            Error::SingularOnSphere => f.write_str("section vanishes on the integration sphere"),
            Error::ResolutionTooCoarse { estimate, target } => write!(
                f,
                "error estimate {:e} exceeds target tolerance {:e}",
                estimate, target
            ),
            Error::UnsupportedDimension(n) => write!(f, "dimension {} is not supported", n),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {}", msg),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
