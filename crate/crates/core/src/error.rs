use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shooting bracket [{lo}, {hi}] does not enclose a root (residuals {f_lo:e}, {f_hi:e})")]
    NoBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("{what} did not converge within {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("integration blew up at x = {x}")]
    BlowUp { x: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("abscissae must start at 0 and be strictly increasing (violated at row {index})")]
    NonMonotoneAbscissae { index: usize },

    #[error("profile table is empty")]
    EmptyTable,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("profile is not evaluable at x = {x}")]
    ProfileNotEvaluable { x: f64 },

    #[error("singular system: {0}")]
    Singular(String),

    #[error("eigensolver failure: {0}")]
    EigenSolver(String),

    #[error("resolution mismatch: reference spectrum at N = {reference} is not finer than N = {base}")]
    ResolutionMismatch { base: usize, reference: usize },

    #[error("enclosure hypothesis V'' <= 0 violated (V''_max = {d2v_max:e})")]
    HypothesisViolated { d2v_max: f64 },

    #[error("inadmissible test function: {0}")]
    InadmissibleTestFunction(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
