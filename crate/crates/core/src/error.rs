use thiserror::Error;

/// Errors reported by the toolkit. Cell coordinates in messages are 1-based.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("row {row}: expected {expected} entries, found {found}")]
    DimensionMismatch {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("cell ({row},{col}): unrecognized token {token:?}")]
    BadToken {
        row: usize,
        col: usize,
        token: String,
    },
    #[error("cell ({row},{col}): symbol {sym} outside 1..={order}")]
    SymbolOutOfRange {
        row: usize,
        col: usize,
        sym: usize,
        order: usize,
    },
    #[error("cell ({row},{col}): symbol {sym} already used in this row or column")]
    LatinViolation { row: usize, col: usize, sym: usize },
    #[error("order {0} is outside the supported range 1..={max}", max = crate::square::MAX_ORDER)]
    UnsupportedOrder(usize),
    #[error("position ({row},{col}) is outside an order-{order} square")]
    PositionOutOfRange { row: usize, col: usize, order: usize },
    #[error("cell ({row},{col}) is empty; a full Latin square is required")]
    Incomplete { row: usize, col: usize },
    #[error("cell ({row},{col}) is already filled")]
    CellFilled { row: usize, col: usize },
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("entry ({row},{col},{sym}) is not an entry of the Latin square")]
    NotContained { row: usize, col: usize, sym: usize },
    #[error("{what}: n = {n} exceeds the guard {limit} (override with --max-n)")]
    GuardExceeded {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("invalid exact cover instance: {0}")]
    InvalidInstance(String),
    #[error("every entry of the Latin square is already present after padding")]
    NoFreeEntry,
    #[error("no symbol can replace an entry of the Latin square outside the padded square")]
    NoAdmissibleSymbol,
    #[error("construction check failed: {0}")]
    ConstructionFailed(String),
    #[error("structured input: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors raised because a search guard was exceeded.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
