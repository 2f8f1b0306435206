use crate::graph::{Id, Sort};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("sort violation: {kind} pair ({a}, {b}) joins {sa} and {sb}")]
    SortViolation {
        kind: &'static str,
        a: Id,
        b: Id,
        sa: Sort,
        sb: Sort,
    },
    #[error("duplicate vertex id {0}")]
    DuplicateId(Id),
    #[error("unknown vertex id {0}")]
    UnknownId(Id),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("({0}, {1}) is not an E2 edge")]
    NotAnE2Edge(Id, Id),
    #[error("set mixes points and planes")]
    MixedSorts,
    #[error("budget exceeded: {what} needs {needed}, cap is {cap}")]
    BudgetExceeded {
        what: &'static str,
        needed: u64,
        cap: u64,
    },
    #[error("oracle mismatch in {what}: iterative {iterative}, brute force {brute}")]
    OracleMismatch {
        what: &'static str,
        iterative: String,
        brute: String,
    },
    #[error("extension is not strong: violating set {certificate:?} with relative delta {delta}")]
    NotStrong { certificate: Vec<Id>, delta: i64 },
    #[error("pair is not simple: {0}")]
    NotSimple(String),
    #[error("mu override {value} is below the floor {floor}")]
    InvalidOverride { value: u64, floor: u64 },
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("postcondition failed: {0}")]
    PostconditionFailed(String),
    #[error("no strong internal copy found for step {step}")]
    InternalCopyMissing { step: usize },
    #[error("({0}, {1}) is not an incident pair of distinct sorts")]
    NotAFlag(Id, Id),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
