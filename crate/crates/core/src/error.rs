//! Error type shared by every module of the crate.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when building or manipulating quivers,
/// potentials and their invariants.
#[derive(Debug, Error)]
pub enum Error {
    /// Two operands were built over different quivers.
    #[error("quiver mismatch: operands live over different quivers")]
    QuiverMismatch,
    /// A name was used that the quiver does not declare.
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    /// A vertex name was used that the quiver does not declare.
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    /// The quiver declaration itself is inconsistent.
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    /// A sequence of edges does not compose.
    #[error("path is not composable: {0}")]
    NotComposable(String),
    /// An operation needing homogeneous input received something else.
    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),
    /// Closedness precondition of Poincaré integration failed.
    #[error("not closed: sum of commutators [x, f_x] is nonzero ({0})")]
    NotClosed(String),
    /// A self-check failed; this points at a convention bug, not bad input.
    #[error("internal consistency failure: {0}")]
    Internal(String),
    /// The input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Matrix or tensor shapes do not fit together.
    #[error("shape mismatch: {0}")]
    Shape(String),
    /// A power series with non-invertible constant term was inverted.
    #[error("singular constant term: {0}")]
    SingularConstantTerm(String),
    /// A computation would exceed its configured size bound.
    #[error("memory guard: working dimension {dim} exceeds bound {bound} ({what})")]
    MemoryGuard {
        /// What was being built.
        what: String,
        /// The dimension that would have been needed.
        dim: usize,
        /// The configured limit.
        bound: usize,
    },
    /// Group data failed a validation check.
    #[error("invalid group data: {0}")]
    Group(String),
    /// Float data could not be rounded to the required exact value.
    #[error("rounding failure: {0}")]
    Rounding(String),
    /// A JSON document could not be parsed or did not match the schema.
    #[error("json error: {0}")]
    Json(String),
    /// Reading or writing a file failed.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
