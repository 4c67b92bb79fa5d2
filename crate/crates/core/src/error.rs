use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a splitting type needs at least one summand")]
    EmptySplittingType,

    #[error("sub/quotient rank {r} is outside 1..{n}")]
    RankOutOfRange { r: usize, n: usize },

    #[error("invalid {name} = {value}: {requirement}")]
    InvalidParameter {
        name: &'static str,
        value: i64,
        requirement: &'static str,
    },

    #[error("exhaustive search for {what} = {requested} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    #[error("inconsistent invariants: {0}")]
    Inconsistent(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Gram matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("lattice is not even: diagonal entry {index} is {value}")]
    NotEven { index: usize, value: i64 },

    #[error("reflection vector has square {square}, expected 2 or -2")]
    NotARoot { square: i64 },

    #[error("lattice has no designated hyperbolic summand")]
    NoHyperbolicSummand,

    #[error("target square {0} is odd; even lattices only represent even squares")]
    OddSquare(i64),

    #[error("orbit search over {size} classes exceeds the budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("no roots of square +-2 with coordinates bounded by {0}")]
    EmptyRootSet(i64),

    #[error("violates {bound}: {detail}")]
    BoundViolated { bound: &'static str, detail: String },

    #[error("negative fiber degree k = {0} needs relative duality, which is not supported")]
    NegativeFiberDegree(i64),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
