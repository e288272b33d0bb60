use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order not translation compatible: {s} <= {t} but not {s}+{u} <= {t}+{u}")]
    OrderIncompatible { s: String, t: String, u: String },
    #[error("relation is not a partial order: {a} and {b}")]
    NotPartialOrder { a: String, b: String },
    #[error("0 is not below {0}")]
    ZeroNotMinimal(String),
    #[error("size {size} exceeds cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("unknown generator {0}")]
    UnknownGenerator(usize),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("enumeration cap {0} exceeded")]
    CapExceeded(usize),
    #[error("missing table entry: {0}")]
    MissingEntry(String),
    #[error("invalid filter: {0}")]
    InvalidFilter(String),
    #[error("invalid prefilter: {0}")]
    PrefilterInvalid(String),
    #[error("fixpoint not reached within {0} rounds")]
    FixpointCapExceeded(usize),
    #[error("filter is not progressive; sinks with nontrivial values: {0}")]
    NotProgressive(String),
    #[error("subgroup is not a minimal inert subgroup: {0}")]
    NotMinimalInert(String),
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("inert subgroups remain after {0} refresh rounds")]
    IterationCapExceeded(usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{line}:{col}: syntax error: {msg}")]
    SyntaxError { line: usize, col: usize, msg: String },
    #[error("{line}: unresolved name {name}")]
    UnresolvedName { line: usize, name: String },
    #[error("{line}: index {index} is outside the monoid")]
    IndexOutOfMonoid { line: usize, index: String },
}

pub type Result<T> = std::result::Result<T, Error>;
