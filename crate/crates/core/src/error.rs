use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("grading is not effective: {0}")]
    NonEffectiveGrading(String),
    #[error("grading is not pointed: {0}")]
    NonPointedGrading(String),
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("block dimension mismatch: {0}")]
    BlockDimMismatch(String),
    #[error("monoid is not pointed: {0}")]
    NonPointedMonoid(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("ample class lies in no orbit cone: {0}")]
    EmptyChamber(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Short stable identifier used in machine-readable diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::NonEffectiveGrading(_) => "non-effective-grading",
            Error::NonPointedGrading(_) => "non-pointed-grading",
            Error::NotHomogeneous(_) => "not-homogeneous",
            Error::ShapeMismatch(_) => "shape-mismatch",
            Error::BlockDimMismatch(_) => "block-dim-mismatch",
            Error::NonPointedMonoid(_) => "non-pointed-monoid",
            Error::BudgetExceeded(_) => "budget-exceeded",
            Error::EmptyChamber(_) => "empty-chamber",
            Error::Invalid(_) => "invalid-input",
        }
    }

    /// Process exit code for the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::BudgetExceeded(_) => 4,
            Error::EmptyChamber(_) => 5,
            _ => 3,
        }
    }
}

impl From<crate::poly::ParseError> for Error {
    fn from(e: crate::poly::ParseError) -> Self {
        Error::Parse(e.to_string())
    }
}
