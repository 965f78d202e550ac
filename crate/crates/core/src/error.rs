use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(u64),
    #[error("vertex id 0 is reserved as the list-end placeholder")]
    ZeroVertexId,
    #[error("vertex {v} does not fit in {n_bits}-bit id space")]
    VertexOutOfRange { v: u64, n_bits: u32 },
    #[error("edge {u}-{v} carries invalid sign {s}")]
    InvalidSign { u: u64, v: u64, s: i64 },
    #[error("vertex {vertex} has degree {degree}, exceeding bound {bound}")]
    DegreeOverflow { vertex: u64, degree: u64, bound: u64 },
    #[error("degree bound must be at least 2, got {0}")]
    DegreeBoundTooSmall(u64),
    #[error("traditional access requires vertex set 1..=N, missing {0}")]
    NonContiguous(u64),
    #[error("combinatorial budget exceeded: {needed} candidates, budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("index space of 2^{n_bits} rows exceeds budget {budget}")]
    IndexBudgetExceeded { n_bits: u32, budget: u64 },
    #[error("adjacency between {i} and {j} is asymmetric")]
    Asymmetric { i: u64, j: u64 },
    #[error("dimension p={p} outside valid range 0..={max}")]
    InvalidDimension { p: usize, max: usize },
    #[error("cannot allocate {needed} new vertex ids below 2^{n_bits}")]
    IdSpaceExhausted { needed: u64, n_bits: u32 },
    #[error("incompatible chain at stage {stage}: expects {expected}, got {got}")]
    IncompatibleChain {
        stage: String,
        expected: String,
        got: String,
    },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("block-encoding entry ({i},{j}) has magnitude {magnitude} > 1")]
    EntryMagnitude { i: u64, j: u64, magnitude: f64 },
    #[error("operation requires a signed oracle")]
    UnsignedOracle,
    #[error("operation requires an unsigned oracle")]
    SignedOracle,
    #[error("{0}")]
    InvalidParameter(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
