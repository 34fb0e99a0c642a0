use thiserror::Error;

/// Errors raised by the algebraic, numeric and combinatorial operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("word `{0}` ends in A and has no corresponding index")]
    WordEndsInA(String),
    #[error("arity mismatch: surjection expects ({expected_left},{expected_right}), got ({left},{right})")]
    ArityMismatch {
        expected_left: usize,
        expected_right: usize,
        left: usize,
        right: usize,
    },
    #[error("index {0} is not admissible (last entry must be at least 2)")]
    NonAdmissible(String),
    #[error("point outside the guaranteed evaluation region: {0}")]
    OutOfRegion(String),
    #[error("relation retains a power of T and cannot be evaluated numerically")]
    UnevaluatableT,
    #[error("p-adic logarithm of zero")]
    ZeroArgument,
    #[error("point is not inside the p-adic convergence polydisc: {0}")]
    NotInDisc(String),
    #[error("division by a p-adic value indistinguishable from zero")]
    DivisionByZero,
    #[error("truncation degrees differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("bad constant term: {0}")]
    BadConstantTerm(String),
    #[error("unsupported truncation degree {0}")]
    UnsupportedDegree(usize),
    #[error("degenerate quadruple: cross ratio is undefined")]
    DegenerateQuadruple,
    #[error("label sets differ")]
    LabelMismatch,
    #[error("unstable tree: {0}")]
    UnstableTree(String),
    #[error("singular point: {0}")]
    SingularPoint(String),
    #[error("invalid input: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// The variant name, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::WordEndsInA(_) => "WordEndsInA",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::NonAdmissible(_) => "NonAdmissible",
            Error::OutOfRegion(_) => "OutOfRegion",
            Error::UnevaluatableT => "UnevaluatableT",
            Error::ZeroArgument => "ZeroArgument",
            Error::NotInDisc(_) => "NotInDisc",
            Error::DivisionByZero => "DivisionByZero",
            Error::TruncationMismatch(..) => "TruncationMismatch",
            Error::BadConstantTerm(_) => "BadConstantTerm",
            Error::UnsupportedDegree(_) => "UnsupportedDegree",
            Error::DegenerateQuadruple => "DegenerateQuadruple",
            Error::LabelMismatch => "LabelMismatch",
            Error::UnstableTree(_) => "UnstableTree",
            Error::SingularPoint(_) => "SingularPoint",
            Error::Parse(_) => "Parse",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
