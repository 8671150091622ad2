use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("square root of negative value")]
    NegativeSqrt,

    #[error("nu must be at least 3, got {0}")]
    BadNu(i64),

    #[error("unknown bound id `{0}`")]
    UnknownBound(String),

    #[error("no balance crossing between the two branches")]
    NoCrossing,

    #[error("malformed process word `{0}`: only characters A and B are allowed, word must be nonempty")]
    BadWord(String),

    #[error("invalid exponent pair ({0}, {1}): need 0 <= k <= 1/2 <= l <= 1")]
    BadPair(String, String),

    #[error("{0}")]
    BadInput(String),

    #[error("formula `{formula}` produced a nonpositive value {value}")]
    NonPositive { formula: String, value: String },

    #[error("cannot parse `{0}` as a rational (expected `p/q` or an integer)")]
    BadRational(String),

    #[error("sieve range {0} exceeds the memory budget; use the hyperbola method")]
    SieveTooLarge(u64),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
