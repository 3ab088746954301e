use thiserror::Error;

use crate::dynamics::ViolationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong inside the library.
///
/// Variants are grouped by the module that raises them; the CLI maps every
/// variant to exit status 1 except [`Error::Parse`], which maps to 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate atom label `{0}`")]
    DuplicateAtom(String),
    #[error("elements or ideals belong to different algebras")]
    AlgebraMismatch,
    #[error("unsupported ideal form: {0}")]
    UnsupportedIdealForm(String),
    #[error("action evaluation failed: {0}")]
    ActionEvaluationError(String),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("value does not belong to this backend: {0}")]
    InvalidValue(String),
    #[error("finite algebras are limited to {max} atoms, got {got}")]
    TooManyAtoms { got: usize, max: usize },

    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("operation needs a finite backend or a closed-form rule: {0}")]
    UnsupportedBackend(String),
    #[error("invalid system:\n{0}")]
    InvalidSystem(ViolationReport),

    #[error("size limit exceeded: {atoms} atoms, limit {limit}")]
    SizeLimit { atoms: usize, limit: usize },
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
    #[error("pair recovery inconclusive at depth {depth}: {detail}")]
    DepthExceeded { depth: usize, detail: String },

    #[error(
        "labelled graph is not weakly left-resolving: label `{label}` sends both `{u}` and `{u2}` to `{w}`"
    )]
    NotWeaklyLeftResolving {
        label: String,
        u: String,
        u2: String,
        w: String,
    },
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("term is not expandable: atom `{0}` is not in the relative ideal")]
    NotExpandable(String),

    #[error("shape error: {0}")]
    ShapeError(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable name of the variant, for machine-readable diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DuplicateAtom(_) => "DuplicateAtom",
            Error::AlgebraMismatch => "AlgebraMismatch",
            Error::UnsupportedIdealForm(_) => "UnsupportedIdealForm",
            Error::ActionEvaluationError(_) => "ActionEvaluationError",
            Error::UnknownAtom(_) => "UnknownAtom",
            Error::InvalidValue(_) => "InvalidValue",
            Error::TooManyAtoms { .. } => "TooManyAtoms",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::UnsupportedBackend(_) => "UnsupportedBackend",
            Error::InvalidSystem(_) => "InvalidSystem",
            Error::SizeLimit { .. } => "SizeLimit",
            Error::InvalidIdeal(_) => "InvalidIdeal",
            Error::DepthExceeded { .. } => "DepthExceeded",
            Error::NotWeaklyLeftResolving { .. } => "NotWeaklyLeftResolving",
            Error::InternalInvariantViolation(_) => "InternalInvariantViolation",
            Error::InvalidGenerator(_) => "InvalidGenerator",
            Error::NotExpandable(_) => "NotExpandable",
            Error::ShapeError(_) => "ShapeError",
            Error::Parse(_) => "Parse",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
