use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("cube dimension {0} out of range (1..={1})")]
    DimensionOutOfRange(usize, usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate vertex {0} in vertex set")]
    DuplicateVertex(usize),
    #[error("product graph would have {requested} vertices, cap is {cap}")]
    SizeCap { requested: u128, cap: usize },
    #[error("matrix contains a non-finite entry at ({0}, {1})")]
    NonFinite(usize, usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
}
