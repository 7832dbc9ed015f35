use thiserror::Error;

/// Errors raised by every module of the crate.
///
/// Variants fall in three groups: bad input (`Parse`, `InvalidGroup`, ...),
/// refusals where a precondition of the requested computation does not hold
/// (`NotAdmissible`, `NotIsolated`, `NotApplicable`, `NotOpen`, ...), and
/// internal consistency failures that signal a bug rather than a user error.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error (line {line}): {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("group order {order} exceeds the configured bound {bound}")]
    BoundExceeded { order: usize, bound: usize },

    #[error("elements {0:?} do not form a subgroup of the ambient group")]
    NotSubgroup(Vec<usize>),

    #[error("multiplicity {0} is not a non-negative integer")]
    NonIntegralMultiplicity(String),

    #[error("action is not admissible: element {element} maps simplex {simplex:?} to itself without fixing it pointwise")]
    NotAdmissible { element: usize, simplex: Vec<usize> },

    #[error("quotient is not simplicial after {subdivisions} barycentric subdivisions; subdivide further")]
    NotRegular { subdivisions: usize },

    #[error("singular orbits are not isolated: simplex {simplex:?} of dimension >= 1 has a non-trivial stabilizer")]
    NotIsolated { simplex: Vec<usize> },

    #[error("identity not applicable: {0}")]
    NotApplicable(String),

    #[error("node set {0} of the filtration is not open")]
    NotOpen(usize),

    #[error("stratum {0} does not admit a constant stabilizer along its orbits")]
    NonConstantStabilizer(usize),

    #[error("expected an integer, got {0}")]
    NonIntegralResult(String),

    #[error("unknown fixture '{0}'")]
    UnknownFixture(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl Error {
    /// Stable identifier used in machine-readable reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "Parse",
            Error::InvalidGroup(_) => "InvalidGroup",
            Error::InvalidComplex(_) => "InvalidComplex",
            Error::InvalidAction(_) => "InvalidAction",
            Error::BoundExceeded { .. } => "BoundExceeded",
            Error::NotSubgroup(_) => "NotSubgroup",
            Error::NonIntegralMultiplicity(_) => "NonIntegralMultiplicity",
            Error::NotAdmissible { .. } => "NotAdmissible",
            Error::NotRegular { .. } => "NotRegular",
            Error::NotIsolated { .. } => "NotIsolated",
            Error::NotApplicable(_) => "NotApplicable",
            Error::NotOpen(_) => "NotOpen",
            Error::NonConstantStabilizer(_) => "NonConstantStabilizer",
            Error::NonIntegralResult(_) => "NonIntegralResult",
            Error::UnknownFixture(_) => "UnknownFixture",
            Error::InternalInconsistency(_) => "InternalInconsistency",
        }
    }

    /// Refusals: the input is well formed but the requested computation's
    /// hypotheses fail.
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            Error::NotIsolated { .. }
                | Error::NotApplicable(_)
                | Error::NotOpen(_)
                | Error::NotAdmissible { .. }
                | Error::NotRegular { .. }
                | Error::NonConstantStabilizer(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
