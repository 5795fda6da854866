use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("bound must be at least 1")]
    ZeroBound,
    #[error("n = {n} out of range 1..={bound}")]
    OutOfRange { n: u64, bound: u64 },
    #[error("bound mismatch: {left} vs {right}")]
    BoundMismatch { left: u64, right: u64 },
    #[error("invalid divisor system: {0}")]
    InvalidSystem(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("invalid family parameters: {0}")]
    InvalidParams(String),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("system `{name}` is not reflexive at n = {n}")]
    NotReflexive { name: String, n: u64 },
    #[error("f(1) is too close to zero to invert")]
    NonInvertible,
    #[error("f(1) must equal 1")]
    NotNormalized,
    #[error("system `{name}` is not complete at bound: n = {n} has {count} decompositions")]
    Incomplete { name: String, n: u64, count: usize },
    #[error("decomposition of {n} is ambiguous ({count} candidates)")]
    Ambiguous { n: u64, count: usize },
    #[error("more than {cap} decompositions at n = {n}; giving up")]
    DecompositionOverflow { n: u64, cap: usize },
    #[error("no value supplied for primitive {q}")]
    MissingPrimitiveValue { q: u64 },
    #[error("function is not class-{class}: witness ({m}, {n})")]
    NotInClass { class: String, m: u64, n: u64 },
    #[error("root refinement did not converge (residual {residual:.3e})")]
    RootsDiverged { residual: f64 },
    #[error("structure sizes must be at least 2")]
    BadStructureSize,
    #[error("triangle needs {p}^{rows} <= bound {bound}")]
    InsufficientBound { p: u64, rows: u32, bound: u64 },
    #[error("invalid JSON payload: {0}")]
    Json(String),
}
