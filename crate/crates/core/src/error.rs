use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not a group: {reason} (witness {witness:?})")]
    NotAGroup { reason: String, witness: Vec<usize> },

    #[error("element set {elems:?} is not closed under multiplication")]
    NotASubgroup { elems: Vec<usize> },

    #[error("no character table available for {0}")]
    UnsupportedGroup(String),

    #[error("eigenvalue multiplicity is not a non-negative integer: {0}")]
    NonIntegralMultiplicity(String),

    #[error("character formula produced a non-integral count: {0}")]
    NonIntegralCount(String),

    #[error("search needs {required} tuples, cutoff is {cutoff}")]
    SearchTooLarge { required: u128, cutoff: u64 },

    #[error("index {index} out of range ({range})")]
    IndexOutOfRange { index: i64, range: String },

    #[error("inconsistent ramification profile: {0}")]
    InconsistentProfile(String),

    #[error("only degree 1 of the Chern character is supported, got {0}")]
    UnsupportedDegree(u32),

    #[error("internal mismatch: {0}")]
    InternalMismatch(String),

    #[error("closed form mismatch: {0}")]
    ClosedFormMismatch(String),

    #[error("divisor classes of genus {left} and {right} cannot be combined")]
    GenusMismatch { left: u32, right: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable code used in JSON error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotAGroup { .. } => "NotAGroup",
            Error::NotASubgroup { .. } => "NotASubgroup",
            Error::UnsupportedGroup(_) => "UnsupportedGroup",
            Error::NonIntegralMultiplicity(_) => "NonIntegralMultiplicity",
            Error::NonIntegralCount(_) => "NonIntegralCount",
            Error::SearchTooLarge { .. } => "SearchTooLarge",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::InconsistentProfile(_) => "InconsistentProfile",
            Error::UnsupportedDegree(_) => "UnsupportedDegree",
            Error::InternalMismatch(_) => "InternalMismatch",
            Error::ClosedFormMismatch(_) => "ClosedFormMismatch",
            Error::GenusMismatch { .. } => "GenusMismatch",
            Error::Parse(_) => "Parse",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }

    pub fn witness(&self) -> Option<Vec<usize>> {
        match self {
            Error::NotAGroup { witness, .. } => Some(witness.clone()),
            Error::NotASubgroup { elems } => Some(elems.clone()),
            _ => None,
        }
    }
}
