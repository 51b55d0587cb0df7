use thiserror::Error;

/// Every failure the solver can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("vertex {vertex} out of range for {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("tree has {0} vertices, need at least 2")]
    TooSmall(usize),

    #[error("vertices {0} and {1} both carry tokens but are adjacent")]
    NotIndependent(usize, usize),
    #[error("vertex {0} listed twice in a token set")]
    DuplicateVertex(usize),
    #[error("no token on source vertex {0}")]
    NoTokenAtSource(usize),
    #[error("destination vertex {0} already holds a token")]
    DestinationOccupied(usize),
    #[error("{0} -> {1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("sliding onto {to} puts it next to the token on {blocker}")]
    IndependenceViolated { to: usize, blocker: usize },

    #[error("no token on subtree root {0}")]
    NoTokenAtRoot(usize),
    #[error("token on {0} is rigid inside its subtree and cannot be evacuated")]
    RootIsRigid(usize),
    #[error("token set is empty")]
    NoTokens,
    #[error("vertex {0} is not a safe leaf")]
    NotSafeLeaf(usize),
    #[error("instance is not reconfigurable: {0}")]
    NotFeasible(String),

    #[error("instance has {n} vertices, oracle cap is {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("path family needs k >= 1, got {0}")]
    InvalidK(usize),
    #[error("no independent set of size {k} found on {n} vertices")]
    Infeasible { n: usize, k: usize },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("schema error in field `{field}`: {reason}")]
    Schema { field: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
