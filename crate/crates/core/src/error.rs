use thiserror::Error;

/// Errors raised by the numerical core and the scenario layer.
///
/// Numeric payloads are reported as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Error)]
pub enum Error {
    #[error("adjacency matrix is not square ({rows} rows, row {row} has {cols} entries)")]
    NotSquare { rows: usize, row: usize, cols: usize },
    #[error("adjacency matrix is empty")]
    Empty,
    #[error("adjacency matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("negative spillover weight at ({i}, {j})")]
    NegativeWeight { i: usize, j: usize },
    #[error("nonzero diagonal entry at node {i}")]
    NonzeroDiagonal { i: usize },
    #[error("non-finite entry at ({i}, {j})")]
    NonFinite { i: usize, j: usize },
    #[error("network is disconnected (node {unreachable} unreachable from node 0)")]
    Disconnected { unreachable: usize },
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("spillover intensity {delta} violates 0 <= delta < 1/lambda1 (lambda1 = {lambda1})")]
    SpectralBound { delta: f64, lambda1: f64 },
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid market primitives: {0}")]
    InvalidPrimitives(String),
    #[error("eta = {eta} outside the admissible range (upper bound {bound})")]
    EtaOutOfRange { eta: f64, bound: f64 },
    #[error("tau = {0} outside [0, 1]")]
    TauOutOfRange(f64),
    #[error("A = {0} outside [-1, 1]")]
    OutOfRange(f64),
    #[error("{0} did not converge")]
    NoConvergence(&'static str),
    #[error("linear system is singular")]
    SingularSystem,
    #[error("regulation set appears to be empty")]
    Infeasible,
    #[error("invalid regulation set: {0}")]
    InvalidRegulation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("assumption violated: {0}")]
    AssumptionViolated(String),
    #[error("network is not regular")]
    NotRegular,
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("two-type partition is not verified")]
    Unverified,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("unknown experiment {0:?}")]
    UnknownExperiment(String),
    #[error("no rows to emit")]
    EmptyRows,
    #[error("at delta = {delta}: {source}")]
    AtDelta {
        delta: f64,
        #[source]
        source: Box<Error>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of the numerics (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::NoConvergence(_) | Error::SingularSystem | Error::Infeasible => true,
            Error::AtDelta { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
