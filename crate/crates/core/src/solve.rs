//! Existence solvers built on the row-transfer relation.
//!
//! A tiling is a sequence of horizontally valid rows in which each row's
//! bottoms equal the next row's tops. The fixed-height solver searches that
//! sequence depth-first, remembering `(row index, previous row)` pairs that
//! cannot be completed. The arbitrary-height solver treats rows as nodes of a
//! directed graph and runs a breadth-first search from white-topped rows to
//! white-bottomed rows, so it terminates although the height is unbounded and
//! returns a witness of minimal height.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tile::{Encoded, TileSet, TileType, BOTTOM, LEFT, RIGHT, TOP};
use crate::tiling::{Height, Tiling, TilingInstance};

/// Default number of explored rows/states before a search gives up.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A horizontally valid row, stored as tile indices into its tile set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RowState {
    tiles: Vec<u32>,
}

impl RowState {
    pub fn from_indices(tiles: Vec<u32>) -> Self {
        RowState { tiles }
    }

    pub fn width(&self) -> usize {
        self.tiles.len()
    }

    pub fn indices(&self) -> &[u32] {
        &self.tiles
    }

    pub fn tiles(&self, set: &TileSet) -> Vec<TileType> {
        self.tiles
            .iter()
            .map(|&i| set.tiles()[i as usize].clone())
            .collect()
    }

    pub(crate) fn bottoms_white(&self, enc: &Encoded) -> bool {
        self.tiles
            .iter()
            .all(|&t| enc.side(t, BOTTOM) == Encoded::WHITE)
    }

    pub(crate) fn bottoms(&self, enc: &Encoded) -> Vec<u32> {
        self.tiles.iter().map(|&t| enc.side(t, BOTTOM)).collect()
    }
}

/// Side conditions for [`enumerate_rows`].
#[derive(Debug, Clone, Default)]
pub struct RowConstraints {
    pub top_must_be_white: bool,
    pub bottom_must_be_white: bool,
    pub first_tile: Option<TileType>,
}

#[derive(Debug, Clone)]
pub(crate) enum Tops {
    Any,
    White,
    Exact(Vec<u32>),
}

/// Streams horizontally valid rows in lexicographic order of tile indices.
#[derive(Debug, Clone)]
pub(crate) struct RowIter<'a> {
    enc: &'a Encoded,
    width: usize,
    tops: Tops,
    bottom_white: bool,
    first: Option<u32>,
    cursor: Vec<usize>,
    row: Vec<u32>,
    done: bool,
}

impl<'a> RowIter<'a> {
    pub(crate) fn new(
        enc: &'a Encoded,
        width: usize,
        tops: Tops,
        bottom_white: bool,
        first: Option<u32>,
    ) -> Self {
        if let Tops::Exact(t) = &tops {
            debug_assert_eq!(t.len(), width);
        }
        RowIter {
            enc,
            width,
            tops,
            bottom_white,
            first,
            cursor: vec![0; width],
            row: Vec::with_capacity(width),
            done: width == 0,
        }
    }

    fn accepts(&self, tile: u32, col: usize) -> bool {
        let s = &self.enc.sides[tile as usize];
        let top_ok = match &self.tops {
            Tops::Any => true,
            Tops::White => s[TOP] == Encoded::WHITE,
            Tops::Exact(t) => s[TOP] == t[col],
        };
        top_ok
            && (!self.bottom_white || s[BOTTOM] == Encoded::WHITE)
            && (col + 1 != self.width || s[RIGHT] == Encoded::WHITE)
            && (col != 0 || self.first.is_none_or(|f| f == tile))
    }
}

impl Iterator for RowIter<'_> {
    type Item = RowState;

    fn next(&mut self) -> Option<RowState> {
        loop {
            if self.done {
                return None;
            }
            let col = self.row.len();
            if col == self.width {
                let out = RowState {
                    tiles: self.row.clone(),
                };
                self.row.pop();
                return Some(out);
            }
            let left = match col {
                0 => Encoded::WHITE,
                _ => self.enc.side(self.row[col - 1], RIGHT),
            };
            let candidates = &self.enc.by_left[left as usize];
            let mut placed = false;
            while self.cursor[col] < candidates.len() {
                let tile = candidates[self.cursor[col]];
                self.cursor[col] += 1;
                if self.accepts(tile, col) {
                    self.row.push(tile);
                    if col + 1 < self.width {
                        self.cursor[col + 1] = 0;
                    }
                    placed = true;
                    break;
                }
            }
            if !placed {
                if col == 0 {
                    self.done = true;
                } else {
                    self.row.pop();
                }
            }
        }
    }
}

/// Rows that can sit directly below `upper` (tops equal to its bottoms).
pub(crate) fn rows_below<'a>(
    enc: &'a Encoded,
    upper: &RowState,
    bottom_white: bool,
) -> RowIter<'a> {
    RowIter::new(
        enc,
        upper.width(),
        Tops::Exact(upper.bottoms(enc)),
        bottom_white,
        None,
    )
}

/// Rows allowed as the first row: white tops and, if given, the seed first.
pub(crate) fn first_rows(
    enc: &Encoded,
    width: usize,
    seed: Option<u32>,
    bottom_white: bool,
) -> RowIter<'_> {
    RowIter::new(enc, width, Tops::White, bottom_white, seed)
}

/// Every horizontally valid row of `width` tiles satisfying `constraints`,
/// each once, in lexicographic order of tile indices.
///
/// A `first_tile` that is not in `tile_set` yields no rows.
pub fn enumerate_rows<'a>(
    tile_set: &'a TileSet,
    width: usize,
    constraints: &RowConstraints,
) -> impl Iterator<Item = RowState> + 'a {
    let enc = tile_set.encoded();
    let first = constraints
        .first_tile
        .as_ref()
        .map(|t| tile_set.index_of(t).map(|i| i as u32));
    let tops = if constraints.top_must_be_white {
        Tops::White
    } else {
        Tops::Any
    };
    let mut iter = RowIter::new(
        enc,
        width,
        tops,
        constraints.bottom_must_be_white,
        first.flatten(),
    );
    if matches!(first, Some(None)) {
        iter.done = true;
    }
    iter
}

/// Whether `lower` may be placed directly below `upper`.
pub fn row_compatible(tile_set: &TileSet, upper: &RowState, lower: &RowState) -> Result<bool> {
    if upper.width() != lower.width() {
        return Err(Error::WidthMismatch {
            upper: upper.width(),
            lower: lower.width(),
        });
    }
    let enc = tile_set.encoded();
    Ok(upper
        .tiles
        .iter()
        .zip(&lower.tiles)
        .all(|(&u, &l)| enc.side(u, BOTTOM) == enc.side(l, TOP)))
}

/// Whether a row is horizontally valid (white outer sides, matching seams).
pub fn row_is_valid(tile_set: &TileSet, row: &RowState) -> bool {
    let enc = tile_set.encoded();
    let t = &row.tiles;
    !t.is_empty()
        && t.iter().all(|&i| (i as usize) < tile_set.len())
        && enc.side(t[0], LEFT) == Encoded::WHITE
        && enc.side(t[t.len() - 1], RIGHT) == Encoded::WHITE
        && t.windows(2)
            .all(|p| enc.side(p[0], RIGHT) == enc.side(p[1], LEFT))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub budget: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub rows_explored: u64,
    pub states_memoized: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub exists: bool,
    pub witness: Option<Tiling>,
    pub stats: SolveStats,
}

impl SolveResult {
    fn no(stats: SolveStats) -> Self {
        SolveResult {
            exists: false,
            witness: None,
            stats,
        }
    }

    fn yes(witness: Tiling, stats: SolveStats) -> Self {
        SolveResult {
            exists: true,
            witness: Some(witness),
            stats,
        }
    }
}

pub(crate) fn rows_to_tiling(set: &TileSet, rows: &[RowState]) -> Tiling {
    let width = rows[0].width();
    let cells = rows.iter().flat_map(|r| r.tiles(set)).collect();
    Tiling::new(rows.len(), width, cells).expect("non-empty rows")
}

struct FixedSearch<'a> {
    enc: &'a Encoded,
    height: usize,
    width: usize,
    seed: Option<u32>,
    budget: u64,
    stats: SolveStats,
    dead: HashSet<(usize, RowState)>,
}

impl FixedSearch<'_> {
    /// Place rows `index..=height` below `prev`; on success the placed rows
    /// are pushed onto `out` in order.
    fn extend(
        &mut self,
        index: usize,
        prev: Option<&RowState>,
        out: &mut Vec<RowState>,
    ) -> Result<bool> {
        let last = index == self.height;
        let iter = match prev {
            None => first_rows(self.enc, self.width, self.seed, last),
            Some(p) => rows_below(self.enc, p, last),
        };
        for row in iter {
            self.stats.rows_explored += 1;
            if self.stats.rows_explored > self.budget {
                return Err(Error::BudgetExceeded {
                    budget: self.budget,
                });
            }
            if last {
                out.push(row);
                return Ok(true);
            }
            let key = (index + 1, row);
            if self.dead.contains(&key) {
                continue;
            }
            out.push(key.1.clone());
            if self.extend(index + 1, Some(&key.1), out)? {
                return Ok(true);
            }
            out.pop();
            self.dead.insert(key);
            self.stats.states_memoized += 1;
        }
        Ok(false)
    }
}

/// Decide a fixed-height instance, honoring the seed if present.
pub fn solve_fixed(instance: &TilingInstance, opts: &SolveOptions) -> Result<SolveResult> {
    let Height::Fixed(height) = instance.height else {
        return Err(Error::WrongHeightMode { expected: "fixed-height" });
    };
    let set = &instance.tile_set;
    let mut search = FixedSearch {
        enc: set.encoded(),
        height,
        width: instance.width,
        seed: instance.seed_index(),
        budget: opts.budget,
        stats: SolveStats::default(),
        dead: HashSet::new(),
    };
    let mut rows = Vec::with_capacity(height);
    if search.extend(1, None, &mut rows)? {
        Ok(SolveResult::yes(rows_to_tiling(set, &rows), search.stats))
    } else {
        Ok(SolveResult::no(search.stats))
    }
}

/// Decide an arbitrary-height instance by reachability in the row graph.
/// The witness has minimal height.
pub fn solve_arbitrary(instance: &TilingInstance, opts: &SolveOptions) -> Result<SolveResult> {
    if instance.height != Height::Arbitrary {
        return Err(Error::WrongHeightMode { expected: "arbitrary-height" });
    }
    let set = &instance.tile_set;
    let enc = set.encoded();
    let mut stats = SolveStats::default();
    let mut nodes: Vec<(RowState, Option<usize>)> = Vec::new();
    let mut seen: HashMap<RowState, usize> = HashMap::new();
    let mut queue = VecDeque::new();

    let mut admit = |row: RowState,
                     parent: Option<usize>,
                     stats: &mut SolveStats,
                     nodes: &mut Vec<(RowState, Option<usize>)>,
                     queue: &mut VecDeque<usize>|
     -> Result<()> {
        stats.rows_explored += 1;
        if seen.contains_key(&row) {
            return Ok(());
        }
        if nodes.len() as u64 >= opts.budget {
            return Err(Error::BudgetExceeded { budget: opts.budget });
        }
        seen.insert(row.clone(), nodes.len());
        queue.push_back(nodes.len());
        nodes.push((row, parent));
        stats.states_memoized += 1;
        Ok(())
    };

    for row in first_rows(enc, instance.width, instance.seed_index(), false) {
        admit(row, None, &mut stats, &mut nodes, &mut queue)?;
    }
    while let Some(id) = queue.pop_front() {
        if nodes[id].0.bottoms_white(enc) {
            let mut path = Vec::new();
            let mut cur = Some(id);
            while let Some(c) = cur {
                path.push(nodes[c].0.clone());
                cur = nodes[c].1;
            }
            path.reverse();
            return Ok(SolveResult::yes(rows_to_tiling(set, &path), stats));
        }
        let current = nodes[id].0.clone();
        for row in rows_below(enc, &current, false) {
            admit(row, Some(id), &mut stats, &mut nodes, &mut queue)?;
        }
    }
    Ok(SolveResult::no(stats))
}

/// Decide the instance ignoring any seed.
pub fn solve_seed_free(instance: &TilingInstance, opts: &SolveOptions) -> Result<SolveResult> {
    solve(&instance.without_seed(), opts)
}

/// Dispatch on the instance's height mode.
pub fn solve(instance: &TilingInstance, opts: &SolveOptions) -> Result<SolveResult> {
    match instance.height {
        Height::Fixed(_) => solve_fixed(instance, opts),
        Height::Arbitrary => solve_arbitrary(instance, opts),
    }
}

/// `exp_0(n) = n`, `exp_k(n) = 2^exp_{k-1}(n)`, with overflow reported.
pub fn expo(k: u32, n: u64) -> Result<u64> {
    let mut v = n;
    for _ in 0..k {
        v = u32::try_from(v)
            .ok()
            .and_then(|s| 1u64.checked_shl(s))
            .ok_or_else(|| Error::Overflow {
                what: format!("exp_{k}({n})"),
            })?;
    }
    Ok(v)
}
