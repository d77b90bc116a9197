use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty distribution")]
    EmptyDistribution,

    #[error("degenerate covariance")]
    DegenerateCovariance,

    #[error("invalid highest weight: m = {m}, n = {n} (need m + n >= 1)")]
    InvalidHighestWeight { m: u32, n: u32 },

    #[error("invalid generator index {0} (expected 0 or 1)")]
    InvalidGenerator(u32),

    #[error("invalid Weyl word {word:?}: {reason}")]
    InvalidWord { word: String, reason: String },

    #[error("unknown reference formula {0:?}")]
    UnknownFormula(String),

    #[error("formula {name} is only defined for {parity} N, got N = {n}")]
    ParityViolation {
        name: &'static str,
        parity: &'static str,
        n: u32,
    },

    #[error("formula {name} needs N >= {min}, got N = {n}")]
    OutOfRange {
        name: &'static str,
        min: u32,
        n: u32,
    },

    #[error("interpolation needs exactly {expected} points, got {got}")]
    PointCount { expected: usize, got: usize },

    #[error("duplicate abscissa N = {0}")]
    DuplicateAbscissa(i64),

    #[error("not cubic on sampled range: {}", format_witnesses(.witnesses))]
    NotCubic {
        witnesses: Vec<(i64, String, String)>,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

fn format_witnesses(w: &[(i64, String, String)]) -> String {
    w.iter()
        .map(|(n, got, fit)| format!("N={n} value={got} fit={fit}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
