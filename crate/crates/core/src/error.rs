use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate metric: {0}")]
    DegenerateMetric(String),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("singular operator (determinant {det:e})")]
    SingularOperator { det: f64 },

    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: f64 },

    #[error("degenerate face {face}")]
    DegenerateFace { face: usize },

    #[error("solver diverged after {iterations} iterations (gradient norm {grad_norm:e})")]
    SolverDiverged { iterations: usize, grad_norm: f64 },

    #[error("structure mismatch: {0}")]
    StructureMismatch(String),

    #[error("representation construction failed (relator residual {residual:e})")]
    ConstructionFailed { residual: f64 },

    #[error("malformed document: {0}")]
    Format(String),
}
