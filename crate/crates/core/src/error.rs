use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),

    #[error("division by zero")]
    DivisionByZero,

    /// Non-unit in F_p[X]/(X^N - 1); `gcd` is the monic gcd with X^N - 1, low degree first.
    #[error("zero divisor modulo {prime}: gcd with X^N - 1 has coefficients {gcd:?}")]
    ZeroDivisor { prime: u64, gcd: Vec<u64> },

    #[error("denominator divisible by p = {prime}")]
    DenominatorDivisibleByPrime { prime: u64 },

    #[error("prime {prime} is not admissible for level {level}")]
    PrimeNotInClass { prime: u64, level: u32 },

    #[error("word {0} ends in x0")]
    EndsInX0(String),

    #[error("word {0} is not of level one")]
    NotLevelOne(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at `{token}`: {message}")]
    Parse { token: String, message: String },

    #[error("summation bound {bound} must be below p = {prime}")]
    BoundTooLarge { bound: u64, prime: u64 },

    #[error("precision not achieved: error bound {bound:e} exceeds tolerance {tolerance:e}")]
    PrecisionNotAchieved { bound: f64, tolerance: f64 },

    #[error("coefficient of T^{degree} did not cancel (magnitude {magnitude:e})")]
    TDependence { degree: usize, magnitude: f64 },

    #[error("series convergence radius {radius} too large for level {level}")]
    UnsupportedLevel { level: u32, radius: f64 },

    #[error("associator truncated at weight {have}, need {needed}")]
    TruncationTooSmall { needed: usize, have: usize },

    #[error("group-likeness violated for ({left}, {right}): defect {defect:e}")]
    NotGroupLike { left: String, right: String, defect: f64 },

    #[error("cache mismatch: {0}")]
    CacheMismatch(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
