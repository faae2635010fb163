use thiserror::Error;

/// Errors shared by the tiling model and the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cell ({row}, {col}) holds a tile that is not in the tile set")]
    UnknownTile { row: usize, col: usize },

    #[error("seed tile is not a member of the tile set")]
    SeedNotInSet,

    #[error("rectangle dimensions must be at least 1x1 (got {height}x{width})")]
    EmptyRectangle { height: usize, width: usize },

    #[error("row widths differ: {upper} vs {lower}")]
    WidthMismatch { upper: usize, lower: usize },

    #[error("search budget of {budget} exhausted; result is inconclusive")]
    BudgetExceeded { budget: u64 },

    #[error("arithmetic overflow while computing {what}")]
    Overflow { what: String },

    #[error("expected a {expected} instance")]
    WrongHeightMode { expected: &'static str },

    #[error("row {row} is beyond the finite player sequence of {len} rows")]
    SequenceExhausted { row: usize, len: usize },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
