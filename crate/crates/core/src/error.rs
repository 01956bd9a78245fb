use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex index {index} out of range for a graph with {m} vertices")]
    VertexOutOfRange { index: usize, m: usize },

    #[error("self-loop on vertex {0} is not allowed")]
    SelfLoop(usize),

    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("vertex set must not be empty")]
    EmptyVertexSet,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("covariance matrix dimension {0} is not a positive even number")]
    OddDimension(usize),

    #[error("squeezing factor for vertex {vertex} must be positive and finite (got {value})")]
    InvalidSqueezing { vertex: usize, value: f64 },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("matrix is singular or not positive definite")]
    Singular,

    #[error("determinant {0:e} is not positive; covariance matrix is unphysical")]
    NonPositiveDeterminant(f64),

    #[error("mode vector is not normalized (squared norm {0})")]
    UnnormalizedMode(f64),

    #[error("vanishing success probability: tr[(V {sign} 1) P] = {trace:e}")]
    VanishingSuccessProbability { sign: char, trace: f64 },

    #[error("unsupported moment order {0}; orders 1 to 4 are available")]
    UnsupportedOrder(u32),

    #[error("degenerate second moment {0:e}; kurtosis undefined")]
    DegenerateMoment(f64),

    #[error("phase-space grids support 1 or 2 vertices, got {0}")]
    GridTooLarge(usize),

    #[error("invalid grid axis: {0}")]
    InvalidAxis(String),

    #[error("unknown preset '{0}'")]
    UnknownPreset(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line tool: 2 for physically
    /// impossible operations, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::VanishingSuccessProbability { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
