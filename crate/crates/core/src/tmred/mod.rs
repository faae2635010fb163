//! Normalized Turing machines and their encoding as tile sets.

pub mod compile;
pub mod corpus;
pub mod decode;
pub mod machine;
pub mod sim;

use thiserror::Error;

pub use compile::{compile_tileset, CellColor, CompiledTm};
pub use decode::{tiling_to_trace, trace_to_rows, trace_to_tiling};
pub use machine::{check_normalized, MachineDesc, Move, NormViolation, NormalizedTm, Transition};
pub use sim::{closable_at, min_closable_steps, simulate, successors, Config, Outcome, SimRun, StuckReason, TmConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TmredError {
    #[error("input of length {input} does not fit in width {width}")]
    TooNarrow { input: usize, width: usize },

    #[error("row {row}, column {col}: bottom color does not encode a tape cell")]
    Undecodable { row: usize, col: usize },

    #[error("row {row}, column {col}: primed and unprimed cells out of alternation")]
    PrimeParity { row: usize, col: usize },

    #[error("row {row} has no head")]
    NoHead { row: usize },

    #[error("row {row} has heads in columns {cols:?}")]
    MultipleHeads { row: usize, cols: Vec<usize> },

    #[error("row {row} closes the tiling but is not its last row")]
    MisplacedClosure { row: usize },

    #[error("trace does not start in the initial configuration")]
    WrongStart,

    #[error("configuration {step} does not follow from the previous one")]
    NotAStep { step: usize },

    #[error("trace of {steps} configurations does not fit above the closing row of height {height}")]
    TraceTooLong { steps: usize, height: usize },

    #[error("cannot close the bottom at height {height}: the run does not end in the final copy state on an erased tape")]
    CannotClose { height: usize },

    #[error(transparent)]
    Core(#[from] crate::error::Error),
}
