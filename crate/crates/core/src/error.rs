use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    // graph construction and validation
    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("vertex {vertex} lists neighbor {neighbor}, which is out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, neighbor: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("asymmetric adjacency: {0} lists {1} but {1} does not list {0}")]
    AsymmetricAdjacency(usize, usize),

    #[error("vertex {0} has no neighbors")]
    IsolatedVertex(usize),

    #[error("graph is disconnected: vertex {unreached} is not reachable from vertex 0")]
    Disconnected { unreached: usize },

    #[error("size parameter too small: {0}")]
    SizeTooSmall(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no connected sample after {retries} retries (n = {n}, p = {p})")]
    RetriesExhausted { n: usize, p: f64, retries: usize },

    #[error("potential value at vertex {0} is not finite")]
    NonFinitePotential(usize),

    // file ingestion
    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema violation: {0}")]
    SchemaViolation(String),

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },

    // spectral
    #[error("size mismatch: graph has {graph} vertices, vector has {other}")]
    SizeMismatch { graph: usize, other: usize },

    #[error("matrix size {n} exceeds the dense solver cap {cap}")]
    SizeCapExceeded { n: usize, cap: usize },

    #[error("eigensolver failed to converge (achieved residual {residual:e})")]
    ConvergenceFailure { residual: f64 },

    #[error("zero vector")]
    ZeroVector,

    #[error("requested {requested} eigenpairs from a matrix of size {n}")]
    TooManyEigenpairs { requested: usize, n: usize },

    // metric and bounds
    #[error("allowed region {{v : W(v) <= {energy}}} is empty (min W = {min_potential})")]
    EmptyAllowedRegion { energy: f64, min_potential: f64 },

    #[error("target vertex {0} is not in the allowed region")]
    TargetNotAllowed(usize),

    #[error("energy mismatch: eigenvalue {eigenvalue} but field computed at {field}")]
    EnergyMismatch { eigenvalue: f64, field: f64 },

    #[error("start vertex {0} is not in the forbidden region")]
    StartNotForbidden(usize),

    #[error("eigenvector vanishes at start vertex {0}")]
    ZeroAmplitudeStart(usize),

    #[error("greedy path stalled at vertex {0}: no neighbor has strictly larger |phi|")]
    GreedyStalled(usize),

    // stochastic
    #[error("forbidden region is empty; the random-walk bound is vacuous")]
    NoForbiddenRegion,

    #[error("random walk step cap {cap} exceeded from vertices {vertices:?}")]
    StepCapExceeded { cap: u64, vertices: Vec<usize> },
}

pub type Result<T> = std::result::Result<T, Error>;
