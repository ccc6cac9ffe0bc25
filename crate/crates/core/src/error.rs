use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("target precision must be at least 10 digits, got {0}")]
    PrecisionTooLow(u32),
    #[error("precision mismatch: {0} bits vs {1} bits")]
    PrecisionMismatch(u32, u32),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("logarithm of a nonpositive number: {0}")]
    NonpositiveLog(String),
    #[error("zeta({0}) diverges; need n >= 2")]
    ZetaDomain(i64),
    #[error("cannot parse `{0}` as a number")]
    Parse(String),
    #[error("evaluation at zero of a polynomial with negative degrees")]
    EvalAtZero,
    #[error("invalid word `{0}`: letters must be 1, 2 or 3 separated by commas")]
    BadWord(String),
    #[error("angle {0} must lie strictly between 0 and pi/2")]
    AngleOutOfRange(String),
    #[error("divergent polylogarithm: {0}")]
    Divergent(String),
    #[error("argument outside the closed unit polydisk: {0}")]
    NotConvergent(String),
    #[error("quadrature oracle supports words of length <= 3, got {0}")]
    WordTooLong(usize),
    #[error("table holds words up to length {have}, need {need}")]
    TableTooShallow { have: usize, need: usize },
    #[error("table of length {0} exceeds the memory budget")]
    TableTooLarge(usize),
    #[error("tables are incompatible: {0}")]
    Incompatible(String),
    #[error("invariant violated at order {order}: {what}")]
    Invariant { order: usize, what: String },
    #[error("general-φ engine limited to order 1")]
    GeneralPhiOrder,
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
