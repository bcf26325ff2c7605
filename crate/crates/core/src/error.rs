use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("graph on {n} vertices exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("graph spec parse error: {0}")]
    Spec(String),

    #[error("{what} on {n} vertices exceeds the enumeration cap of {cap} vertices")]
    CapExceeded { what: &'static str, n: usize, cap: usize },

    #[error("asymmetric density needs m2(first) >= m2(second), got {first} < {second}; swap the arguments")]
    DensityOrder { first: String, second: String },

    #[error("pattern graph has no edges")]
    EmptyPattern,

    #[error("vertex counts differ: {left} vs {right}")]
    VertexCountMismatch { left: usize, right: usize },

    #[error("invalid rational: {0}")]
    Rational(String),

    #[error("registry error: {0}")]
    Registry(String),
}
