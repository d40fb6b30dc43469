pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] capax_core::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph6: {0}")]
    Graph6(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("check `{name}` failed: {detail}")]
    FixtureCheck { name: String, detail: String },
    #[error("theta solver did not converge: {0}")]
    Numerical(String),
    #[error("{0}")]
    Usage(String),
}
