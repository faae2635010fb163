//! Small reference instances used by tests, examples and the generator.

use crate::tile::{TileSet, TileType};
use crate::tiling::Tiling;

fn t(l: &str, u: &str, r: &str, d: &str) -> TileType {
    TileType::new(l, u, r, d)
}

/// Rows of the 3x3 green/red/yellow example solution.
fn example_rows() -> Vec<Vec<TileType>> {
    vec![
        vec![
            t("white", "white", "green", "red"),
            t("green", "white", "green", "yellow"),
            t("green", "white", "white", "yellow"),
        ],
        vec![
            t("white", "red", "red", "red"),
            t("red", "yellow", "red", "green"),
            t("red", "yellow", "white", "yellow"),
        ],
        vec![
            t("white", "red", "green", "white"),
            t("green", "green", "red", "white"),
            t("red", "yellow", "white", "white"),
        ],
    ]
}

/// The nine tiles of the 3x3 example, in row-major order of the solution.
pub fn example_tile_set() -> TileSet {
    TileSet::new(example_rows().into_iter().flatten())
}

/// Top-left tile of the 3x3 example.
pub fn example_seed() -> TileType {
    t("white", "white", "green", "red")
}

pub fn example_solution() -> Tiling {
    Tiling::from_rows(example_rows()).expect("3x3")
}
