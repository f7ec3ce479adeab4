use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum NestError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("self-loop on node {node}")]
    SelfLoop { node: usize },

    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },

    #[error("node {node} out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("{0}")]
    DirectionMismatch(String),

    #[error("expected a sequence of length {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("coloring is not equitable")]
    NotEquitable,

    #[error("unknown color class {0}")]
    UnknownClass(usize),

    #[error("depth must be at least 1")]
    InvalidDepth,

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("graph has no edges")]
    NoEdges,

    #[error("{kind} did not converge within {iterations} iterations (residual {residual:e})")]
    NotConverged { kind: &'static str, iterations: usize, residual: f64 },

    #[error("attenuation {attenuation} diverges for spectral radius estimate {radius}")]
    DivergentSeries { attenuation: f64, radius: f64 },

    #[error("ensemble enumeration is capped at {cap} nodes, graph has {n}")]
    EnumerationCap { cap: usize, n: usize },

    #[error("cannot place {m} edges in a simple graph with {max} possible edges")]
    InfeasibleEdgeCount { m: usize, max: usize },

    #[error("graphs are not comparable: {0}")]
    Incompatible(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, NestError>;
