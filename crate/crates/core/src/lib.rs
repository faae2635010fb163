//! Bounded Wang tiling problems.
//!
//! The crate models finite-rectangle tilings with Wang tiles and provides:
//!
//! * [`tiling`]: tilings, instances, the validity checker and an exhaustive
//!   enumeration oracle;
//! * [`solve`]: row-transfer solvers for fixed, arbitrary and seed-free
//!   variants;
//! * [`det`]: deterministic tile sets and backtrack-free completion;
//! * [`game`]: two-player row-alternation tiling games;
//! * [`tmred`]: normalized Turing machines and their compilation to tile sets;
//! * [`width1`]: width-one tilings and graph reachability reductions;
//! * [`fo`]: constant-size tilings as first-order formulas;
//! * [`io`]: JSON and text file formats.

pub mod det;
pub mod error;
pub mod fixtures;
pub mod fo;
pub mod game;
pub mod io;
pub mod solve;
pub mod tile;
pub mod tiling;
pub mod tmred;
pub mod width1;

pub use error::{Error, Result};
pub use solve::{RowState, SolveOptions, SolveResult, SolveStats};
pub use tile::{Color, TileSet, TileType};
pub use tiling::{Height, Tiling, TilingInstance, ValidityReport, Violation};
