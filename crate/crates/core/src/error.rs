use thiserror::Error;

/// Errors raised by graph construction, exact algebra and the spectral checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("invalid edge {{{u},{v}}} for a graph on {n} vertices")]
    InvalidEdge { u: usize, v: usize, n: usize },

    #[error("graph must have at least one vertex")]
    NoVertices,

    #[error("graph is disconnected: vertex {v} is unreachable from vertex {u}")]
    Disconnected { u: usize, v: usize },

    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("k = {k} is out of range for n = {n}")]
    KOutOfRange { n: usize, k: usize },

    #[error("characteristic polynomial does not split over the integers (unresolved degree {0})")]
    NotIntegral(usize),

    #[error("spectrum difference: {0}")]
    NotContained(String),

    #[error("spectra modes differ")]
    ModeMismatch,

    #[error("matrices do not commute")]
    NotCommuting,

    #[error("no separating weight 1/t found for t <= {0}")]
    SeparationFailure(u64),

    #[error("predistance polynomial {index} vanishes at the normalization point")]
    DegenerateNormalization { index: usize },

    #[error("malformed Laplacian: {0}")]
    MalformedLaplacian(String),

    #[error("pairing table: {0}")]
    Pairing(String),

    #[error("not a spanning subgraph of J({n},{k}): {reason}")]
    NotJohnsonSubgraph { n: usize, k: usize, reason: String },

    #[error("k-subsets are not comparable: {0}")]
    SubsetMismatch(String),

    #[error("inconsistent results: {0}")]
    Inconsistent(String),

    #[error("invalid value: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
