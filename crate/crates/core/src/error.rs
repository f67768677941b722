use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),
    #[error("node {0:?} is not declared")]
    MissingNode(String),
    #[error("edge {index} ({tail} -> {head}) has negative capacity")]
    NegativeCapacity { index: usize, tail: String, head: String },
    #[error("edge {index} ({tail} -> {head}) has negative cost")]
    NegativeCost { index: usize, tail: String, head: String },
    #[error("edge {index} is a self-loop on node {node:?}")]
    SelfLoop { index: usize, node: String },
    #[error("source and sink are the same node {0:?}")]
    SourceIsSink(String),
    #[error("no path from source to sink")]
    NoPathSourceToSink,
    #[error(
        "multiple sources or sinks are not supported; add a super-source (resp. super-sink) \
         node connected to every source (resp. from every sink) by an uncapacitated edge of \
         zero transport cost, then pass the single new node"
    )]
    MultipleTerminals,
    #[error("invalid edge index {0}")]
    InvalidEdgeIndex(usize),
    #[error("no edge {tail} -> {head}")]
    UnknownEdge { tail: String, head: String },
    #[error("edge {tail} -> {head} is ambiguous (parallel edges); use \"edge_index\"")]
    AmbiguousEdge { tail: String, head: String },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("flow exceeds capacity on edge {0}")]
    Infeasible(usize),
    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("network has {nodes} nodes, more than the enumeration limit of {limit} inner nodes")]
    TooManyNodes { nodes: usize, limit: usize },
    #[error("more than {limit} simple source-sink paths")]
    TooManyPaths { limit: usize },
    #[error("{edges} edges exceeds the enumeration limit of {limit}")]
    TooManyEdges { edges: usize, limit: usize },
    #[error("parameters are not in the required region: {0}")]
    WrongRegion(String),
    #[error("parameters lie on a region boundary: {0}")]
    BoundaryParameters(String),
    #[error("the network does not satisfy the cheapest-path assumption: {0}")]
    AssumptionViolated(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("budget {budget} outside [{low}, {high}]")]
    BudgetOutOfRange { budget: String, low: String, high: String },
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
