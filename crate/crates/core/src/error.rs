use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("base does not cover the universe: missing points {missing:#b}")]
    BaseDoesNotCoverUniverse { missing: u32 },
    #[error("universe of {n} points exceeds the limit of {max}")]
    UniverseTooLarge { n: usize, max: usize },
    #[error("unknown operator word `{0}`")]
    UnknownWord(String),
    #[error("operators live on universes of different size ({left} vs {right})")]
    UniverseMismatch { left: usize, right: usize },
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("first ordering is not contained in the second: pair ({0}, {1}) missing")]
    NotContained(String, String),
    #[error("no {kind} predicate matches subset {subset:#b}")]
    NoMatch { kind: &'static str, subset: u32 },
    #[error("{kind} predicates {matches:?} all match subset {subset:#b}")]
    MultipleMatch {
        kind: &'static str,
        subset: u32,
        matches: Vec<u8>,
    },
    #[error("no witness recorded for psi-number {0}")]
    NoWitnessFound(u8),
    #[error("labeled enumeration is limited to n <= {max}, got {n}")]
    OracleLimitExceeded { n: usize, max: usize },
    #[error("no witness found for n <= {0}")]
    NotFoundWithinBound(usize),
    #[error("no witness available for class {0}")]
    MissingWitness(u8),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown census kind `{0}`")]
    UnknownCensus(String),
    #[error("meet of {m} and {n}: collapse intersection gives {by_collapse}, sum space gives {realized}")]
    RouteMismatch {
        m: u8,
        n: u8,
        by_collapse: u8,
        realized: u8,
    },
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("invalid expression `{expr}`: {reason}")]
    InvalidExpression { expr: String, reason: String },
    #[error("cache at {path} is stale: {reason}")]
    StaleCache { path: String, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
