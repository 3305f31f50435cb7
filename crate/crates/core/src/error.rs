use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("length error: need at least {need} samples, got {got}")]
    Length { need: usize, got: usize },

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("singular system: pivot {pivot:.3e} below threshold {threshold:.3e}")]
    SingularSystem { pivot: f64, threshold: f64 },

    #[error("no convergence after {iterations} iterations (last residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("trivial solution: sup-norm {norm:.3e} is not above 1e-8")]
    TrivialSolution { norm: f64 },

    #[error("candidate is not a solution: representation residual {residual:.3e} exceeds {tolerance:.3e}")]
    NotASolution { residual: f64, tolerance: f64 },

    #[error("kernel matrix is identically zero")]
    ZeroKernel,

    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
