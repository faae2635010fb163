//! Rectangular tilings, instances, the reference validity checker and the
//! exhaustive enumeration oracle.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tile::{Encoded, TileSet, TileType, BOTTOM, LEFT, RIGHT, TOP};

/// An `height x width` grid of tiles, stored row-major. Coordinates in the
/// public API are 1-based `(row, col)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TilingRows", into = "TilingRows")]
pub struct Tiling {
    height: usize,
    width: usize,
    cells: Vec<TileType>,
}

/// Serialized form: `{"rows": [[tile, ...], ...]}`.
#[derive(Serialize, Deserialize)]
struct TilingRows {
    rows: Vec<Vec<TileType>>,
}

impl TryFrom<TilingRows> for Tiling {
    type Error = Error;

    fn try_from(r: TilingRows) -> Result<Self> {
        Tiling::from_rows(r.rows)
    }
}

impl From<Tiling> for TilingRows {
    fn from(t: Tiling) -> Self {
        TilingRows {
            rows: t.rows().map(<[_]>::to_vec).collect(),
        }
    }
}

impl Tiling {
    pub fn new(height: usize, width: usize, cells: Vec<TileType>) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::EmptyRectangle { height, width });
        }
        if cells.len() != height * width {
            return Err(Error::Invalid(format!(
                "expected {} cells for a {height}x{width} tiling, got {}",
                height * width,
                cells.len()
            )));
        }
        Ok(Tiling {
            height,
            width,
            cells,
        })
    }

    pub fn from_rows(rows: Vec<Vec<TileType>>) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::Invalid("ragged rows".into()));
        }
        Tiling::new(height, width, rows.into_iter().flatten().collect())
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Tile at 1-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &TileType {
        assert!((1..=self.height).contains(&row) && (1..=self.width).contains(&col));
        &self.cells[(row - 1) * self.width + (col - 1)]
    }

    pub fn row(&self, row: usize) -> &[TileType] {
        &self.cells[(row - 1) * self.width..row * self.width]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[TileType]> {
        self.cells.chunks(self.width)
    }

    pub fn cells(&self) -> &[TileType] {
        &self.cells
    }

    /// Mirror along the main diagonal, transposing every tile as well.
    pub fn transposed(&self) -> Tiling {
        let mut cells = Vec::with_capacity(self.cells.len());
        for c in 1..=self.width {
            for r in 1..=self.height {
                cells.push(self.get(r, c).transposed());
            }
        }
        Tiling {
            height: self.width,
            width: self.height,
            cells,
        }
    }
}

impl fmt::Debug for Tiling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Tiling {}x{}", self.height, self.width)?;
        for row in self.rows() {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// One violated tiling constraint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    /// Constraint 1: left side of the first column is not white.
    LeftBorder { row: usize },
    /// Constraint 1: right side of the last column is not white.
    RightBorder { row: usize },
    /// Constraint 2: top side of the first row is not white.
    TopBorder { col: usize },
    /// Constraint 2: bottom side of the last row is not white.
    BottomBorder { col: usize },
    /// Constraint 3 between `(row, col)` and `(row, col + 1)`.
    Horizontal { row: usize, col: usize },
    /// Constraint 4 between `(row, col)` and `(row + 1, col)`.
    Vertical { row: usize, col: usize },
    /// The tile at `(1, 1)` is not the seed.
    Seed,
}

impl Violation {
    /// Number of the border/matching constraint, or `None` for the seed.
    pub fn constraint(&self) -> Option<u8> {
        match self {
            Violation::LeftBorder { .. } | Violation::RightBorder { .. } => Some(1),
            Violation::TopBorder { .. } | Violation::BottomBorder { .. } => Some(2),
            Violation::Horizontal { .. } => Some(3),
            Violation::Vertical { .. } => Some(4),
            Violation::Seed => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check constraints 1-4 and the seed condition, listing every violation.
///
/// Fails with [`Error::UnknownTile`] when a cell uses a tile outside `tile_set`.
pub fn validate_tiling(
    tile_set: &TileSet,
    tiling: &Tiling,
    seed: Option<&TileType>,
) -> Result<ValidityReport> {
    let (h, w) = (tiling.height, tiling.width);
    for r in 1..=h {
        for c in 1..=w {
            if !tile_set.contains(tiling.get(r, c)) {
                return Err(Error::UnknownTile { row: r, col: c });
            }
        }
    }
    let mut violations = Vec::new();
    for r in 1..=h {
        if !tiling.get(r, 1).left.is_white() {
            violations.push(Violation::LeftBorder { row: r });
        }
        if !tiling.get(r, w).right.is_white() {
            violations.push(Violation::RightBorder { row: r });
        }
    }
    for c in 1..=w {
        if !tiling.get(1, c).top.is_white() {
            violations.push(Violation::TopBorder { col: c });
        }
        if !tiling.get(h, c).bottom.is_white() {
            violations.push(Violation::BottomBorder { col: c });
        }
    }
    for r in 1..=h {
        for c in 1..w {
            if tiling.get(r, c).right != tiling.get(r, c + 1).left {
                violations.push(Violation::Horizontal { row: r, col: c });
            }
        }
    }
    for r in 1..h {
        for c in 1..=w {
            if tiling.get(r, c).bottom != tiling.get(r + 1, c).top {
                violations.push(Violation::Vertical { row: r, col: c });
            }
        }
    }
    if let Some(seed) = seed {
        if tiling.get(1, 1) != seed {
            violations.push(Violation::Seed);
        }
    }
    Ok(ValidityReport { violations })
}

/// Height of the rectangle: a fixed number of rows, or existentially
/// quantified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Height {
    Fixed(usize),
    Arbitrary,
}

/// One input of a bounded tiling problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingInstance {
    /// The unary size parameter. Only carried along; solvers read `height`
    /// and `width` directly.
    pub n: u64,
    pub tile_set: TileSet,
    pub seed: Option<TileType>,
    pub height: Height,
    pub width: usize,
}

impl TilingInstance {
    pub fn new(
        n: u64,
        tile_set: TileSet,
        seed: Option<TileType>,
        height: Height,
        width: usize,
    ) -> Result<Self> {
        if width == 0 || height == Height::Fixed(0) {
            let h = match height {
                Height::Fixed(h) => h,
                Height::Arbitrary => 1,
            };
            return Err(Error::EmptyRectangle { height: h, width });
        }
        if let Some(s) = &seed {
            if !tile_set.contains(s) {
                return Err(Error::SeedNotInSet);
            }
        }
        Ok(TilingInstance {
            n,
            tile_set,
            seed,
            height,
            width,
        })
    }

    /// Convenience constructor for a fixed `height x width` rectangle.
    pub fn fixed(
        tile_set: TileSet,
        seed: Option<TileType>,
        height: usize,
        width: usize,
    ) -> Result<Self> {
        TilingInstance::new(height as u64, tile_set, seed, Height::Fixed(height), width)
    }

    pub fn arbitrary(tile_set: TileSet, seed: Option<TileType>, width: usize) -> Result<Self> {
        TilingInstance::new(width as u64, tile_set, seed, Height::Arbitrary, width)
    }

    pub fn with_height(&self, height: Height) -> Result<Self> {
        TilingInstance::new(
            self.n,
            self.tile_set.clone(),
            self.seed.clone(),
            height,
            self.width,
        )
    }

    pub fn without_seed(&self) -> Self {
        TilingInstance {
            seed: None,
            ..self.clone()
        }
    }

    pub(crate) fn seed_index(&self) -> Option<u32> {
        self.seed
            .as_ref()
            .map(|s| self.tile_set.index_of(s).expect("seed checked at construction") as u32)
    }
}

/// Default cap on search nodes for [`brute_force_exists`].
pub const DEFAULT_ORACLE_BUDGET: u64 = 20_000_000;

/// Decide an instance by exhaustive cell-by-cell search.
///
/// Cells are filled in row-major order, each ranging over tile indices in
/// tile-set order, and a partial assignment is abandoned as soon as its last
/// cell breaks a local constraint. The returned witness is therefore the
/// lexicographically first valid tiling. For [`Height::Arbitrary`], heights
/// `1..=height_cap` are tried in increasing order.
///
/// Refuses with [`Error::BudgetExceeded`] once more than `budget` tiles have
/// been placed.
pub fn brute_force_exists(
    instance: &TilingInstance,
    height_cap: usize,
    budget: u64,
) -> Result<Option<Tiling>> {
    let heights: Vec<usize> = match instance.height {
        Height::Fixed(h) => vec![h],
        Height::Arbitrary => (1..=height_cap).collect(),
    };
    let mut spent = 0u64;
    for h in heights {
        let mut search = CellSearch {
            enc: instance.tile_set.encoded(),
            h,
            w: instance.width,
            seed: instance.seed_index(),
            cells: Vec::with_capacity(h * instance.width),
            spent,
            budget,
        };
        if search.fill()? {
            let set = &instance.tile_set;
            let cells = search
                .cells
                .iter()
                .map(|&i| set.tiles()[i as usize].clone())
                .collect();
            return Ok(Some(Tiling::new(h, instance.width, cells).expect("dimensions checked")));
        }
        spent = search.spent;
    }
    Ok(None)
}

struct CellSearch<'a> {
    enc: &'a Encoded,
    h: usize,
    w: usize,
    seed: Option<u32>,
    cells: Vec<u32>,
    spent: u64,
    budget: u64,
}

impl CellSearch<'_> {
    fn fill(&mut self) -> Result<bool> {
        let pos = self.cells.len();
        if pos == self.h * self.w {
            return Ok(true);
        }
        for t in 0..self.enc.sides.len() as u32 {
            if !self.fits(pos, t) {
                continue;
            }
            self.spent += 1;
            if self.spent > self.budget {
                return Err(Error::BudgetExceeded { budget: self.budget });
            }
            self.cells.push(t);
            if self.fill()? {
                return Ok(true);
            }
            self.cells.pop();
        }
        Ok(false)
    }

    fn fits(&self, pos: usize, t: u32) -> bool {
        let (r, c) = (pos / self.w, pos % self.w);
        let e = self.enc;
        if pos == 0 && self.seed.is_some_and(|s| s != t) {
            return false;
        }
        let left = if c == 0 { Encoded::WHITE } else { e.side(self.cells[pos - 1], RIGHT) };
        let up = if r == 0 { Encoded::WHITE } else { e.side(self.cells[pos - self.w], BOTTOM) };
        e.side(t, LEFT) == left
            && e.side(t, TOP) == up
            && (c + 1 < self.w || e.side(t, RIGHT) == Encoded::WHITE)
            && (r + 1 < self.h || e.side(t, BOTTOM) == Encoded::WHITE)
    }
}
