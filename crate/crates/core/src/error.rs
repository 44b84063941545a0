use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("channel has an empty alphabet")]
    EmptyAlphabet,
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row} has negative entry {value} at column {col}")]
    NegativeEntry { row: usize, col: usize, value: String },
    #[error("row {row} sums to {sum}, not 1")]
    NonStochasticRow { row: usize, sum: String },
    #[error("crossover probability {0} outside [0, 1/2]")]
    InvalidEpsilon(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("product alphabet of size {size} exceeds cap {cap}")]
    SizeOverflow { size: usize, cap: usize },
    #[error("index {index} out of range for alphabet of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("alphabet mismatch: {0}x{1} vs {2}x{3}")]
    AlphabetMismatch(usize, usize, usize, usize),
    #[error("degenerate payoff matrix: {0}")]
    DegenerateMatrix(String),
    #[error("degenerate channel: capacity is zero")]
    DegenerateChannel,
    #[error("degenerate game: smoothed game value is zero")]
    DegenerateGame,
    #[error("{0} did not converge within {1} iterations")]
    NonConvergence(&'static str, usize),
    #[error("objective still increasing at rho cap {0}; raise the cap")]
    RhoCapExceeded(f64),
    #[error("graph with {0} vertices exceeds the independence-number budget of {1}")]
    BudgetExceeded(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}
