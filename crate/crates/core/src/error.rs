use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("polynomial is not symmetric under t -> 1/t: {0}")]
    NotSymmetric(String),

    #[error("polynomial is not an integer polynomial in z^2: {0}")]
    NotInImage(String),

    #[error("not a Seifert matrix: det(V - V^t) = {det}")]
    NotSeifert { det: String },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("odd-rank Seifert matrix ({0}); knot invariants need even rank")]
    OddRank(usize),

    #[error("invalid block: {0}")]
    InvalidBlock(String),

    #[error("equivariance violated: T^t A T != -A^t or T^2 != I")]
    EquivarianceViolated,

    #[error("singular base change")]
    SingularBaseChange,

    #[error("singular hermitian form; split off the radical first")]
    SingularForm,

    #[error("form is singular at e^(2 pi i {a}/{b})")]
    SingularAtSample { a: i64, b: u64 },

    #[error("e^(2 pi i {a}/{b}) is a root of the Alexander polynomial")]
    SingularAtRoot { a: i64, b: u64 },

    #[error("sign certification failed below the precision cap of {cap} bits")]
    PrecisionExhausted { cap: u32 },

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("internal oracle mismatch: {0}")]
    OracleMismatch(String),

    #[error("matrix is not invertible mod {p}")]
    NotInvertibleModP { p: u64 },

    #[error("the {p}-primary part of H_1 is not elementary abelian")]
    NotElementaryAbelian { p: u64 },

    #[error("search space too large: {0}")]
    TooLarge(String),

    #[error("singular intermediate: {0}")]
    SingularIntermediate(String),

    #[error("identity failed: {0}")]
    IdentityFailure(String),

    #[error("chain mismatch: {0}")]
    ChainMismatch(String),

    #[error("unsupported family for this formula: {0}")]
    BadFamily(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}
