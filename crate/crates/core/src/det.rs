//! Deterministic tile sets and backtrack-free completion.
//!
//! A tile set is deterministic when its colors split into two classes, `One`
//! (containing white) and `Two`, such that
//!
//! 1. every tile has exactly one of its top and bottom colors in `One`;
//! 2. for a top color in `One` and any left color, at most one tile carries
//!    that (left, top) pair;
//! 3. for a top color in `Two` and any right color, at most one tile carries
//!    that (right, top) pair.
//!
//! Uniqueness in 2 and 3 is counted separately among closing tiles (white
//! bottom) and non-closing tiles: completion places closing tiles only in the
//! last row, where the bottom border forces them, and non-closing tiles
//! everywhere else.
//!
//! By 1, the tops of row `i` are in `One` exactly when `i` is odd. Odd rows are
//! therefore filled left to right, keyed on the left neighbour, and even rows
//! right to left, keyed on the right neighbour, and every cell has at most one
//! candidate.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::solve::{SolveResult, SolveStats};
use crate::tile::{Color, TileSet, TileType};
use crate::tiling::Tiling;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ColorClass {
    One,
    Two,
}

impl ColorClass {
    fn from_parity(p: u8) -> Self {
        if p == 0 {
            ColorClass::One
        } else {
            ColorClass::Two
        }
    }
}

/// Total class assignment over the tile set's colors plus white.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorPartition {
    pub class_of: BTreeMap<Color, ColorClass>,
}

impl ColorPartition {
    /// Class of `c`; colors outside the map are in `One`.
    pub fn class(&self, c: &Color) -> ColorClass {
        self.class_of.get(c).copied().unwrap_or(ColorClass::One)
    }
}

/// One constraint of the partition search, as it appears in counterexamples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Constraint {
    /// White belongs to `One`.
    WhiteIsOne,
    /// Top and bottom of `tile` lie in different classes.
    TopBottomDiffer { tile: TileType },
    /// Two tiles share (left, top): their top color cannot be in `One`.
    SharedLeftKey { first: TileType, second: TileType },
    /// Two tiles share (right, top): their top color cannot be in `Two`.
    SharedRightKey { first: TileType, second: TileType },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterminismCertificate {
    pub deterministic: bool,
    pub partition: Option<ColorPartition>,
    /// Constraints forming an odd parity cycle; together they are
    /// unsatisfiable.
    pub counterexample: Option<Vec<Constraint>>,
}

const ANCHOR: usize = 0;

/// Union-find over color nodes with parity to the parent.
struct ParityDsu {
    parent: Vec<usize>,
    parity: Vec<u8>,
}

impl ParityDsu {
    fn new(n: usize) -> Self {
        ParityDsu {
            parent: (0..n).collect(),
            parity: vec![0; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, u8) {
        let p = self.parent[x];
        if p == x {
            return (x, 0);
        }
        let (root, up) = self.find(p);
        self.parent[x] = root;
        self.parity[x] ^= up;
        (root, self.parity[x])
    }

    /// Record `class(a) xor class(b) == p`; false on contradiction.
    fn relate(&mut self, a: usize, b: usize, p: u8) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == p;
        }
        // keep the anchor as a root so its parity stays 0
        let (child, root) = if rb == ANCHOR { (ra, rb) } else { (rb, ra) };
        self.parent[child] = root;
        self.parity[child] = pa ^ pb ^ p;
        true
    }
}

/// Search for a satisfying partition by parity propagation.
pub fn detect_deterministic(tile_set: &TileSet) -> DeterminismCertificate {
    // node 0 is the `One` anchor; colors follow in sorted order
    let mut colors: Vec<Color> = tile_set.colors().iter().cloned().collect();
    if !colors.iter().any(Color::is_white) {
        colors.push(Color::white());
        colors.sort();
    }
    let node: HashMap<Color, usize> = colors
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i + 1))
        .collect();

    let mut edges: Vec<(usize, usize, u8, Constraint)> = Vec::new();
    edges.push((node[&Color::white()], ANCHOR, 0, Constraint::WhiteIsOne));
    for t in tile_set.tiles() {
        edges.push((
            node[&t.top],
            node[&t.bottom],
            1,
            Constraint::TopBottomDiffer { tile: t.clone() },
        ));
    }
    let mut left_keys: BTreeMap<(bool, &Color, &Color), &TileType> = BTreeMap::new();
    let mut right_keys: BTreeMap<(bool, &Color, &Color), &TileType> = BTreeMap::new();
    let mut forced_two = std::collections::BTreeSet::new();
    let mut forced_one = std::collections::BTreeSet::new();
    for t in tile_set.tiles() {
        let closing = t.bottom.is_white();
        if let Some(first) = left_keys.insert((closing, &t.left, &t.top), t) {
            if forced_two.insert(&t.top) {
                edges.push((
                    node[&t.top],
                    ANCHOR,
                    1,
                    Constraint::SharedLeftKey {
                        first: first.clone(),
                        second: t.clone(),
                    },
                ));
            }
        }
        if let Some(first) = right_keys.insert((closing, &t.right, &t.top), t) {
            if forced_one.insert(&t.top) {
                edges.push((
                    node[&t.top],
                    ANCHOR,
                    0,
                    Constraint::SharedRightKey {
                        first: first.clone(),
                        second: t.clone(),
                    },
                ));
            }
        }
    }

    let n = colors.len() + 1;
    let mut dsu = ParityDsu::new(n);
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (idx, (a, b, p, _)) in edges.iter().enumerate() {
        if !dsu.relate(*a, *b, *p) {
            let mut cycle = shortest_path(&adjacency, *a, *b)
                .into_iter()
                .map(|e| edges[e].3.clone())
                .collect::<Vec<_>>();
            cycle.push(edges[idx].3.clone());
            return DeterminismCertificate {
                deterministic: false,
                partition: None,
                counterexample: Some(cycle),
            };
        }
        adjacency[*a].push((*b, idx));
        adjacency[*b].push((*a, idx));
    }

    // unconstrained components: put their root in `One`
    let class_of = colors
        .iter()
        .map(|c| {
            let (_, p) = dsu.find(node[c]);
            (c.clone(), ColorClass::from_parity(p))
        })
        .collect();
    DeterminismCertificate {
        deterministic: true,
        partition: Some(ColorPartition { class_of }),
        counterexample: None,
    }
}

/// Edge indices of a shortest path from `from` to `to`.
fn shortest_path(adjacency: &[Vec<(usize, usize)>], from: usize, to: usize) -> Vec<usize> {
    if from == to {
        return Vec::new();
    }
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; adjacency.len()];
    let mut seen = vec![false; adjacency.len()];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for &(v, e) in &adjacency[u] {
            if !seen[v] {
                seen[v] = true;
                prev[v] = Some((u, e));
                queue.push_back(v);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while let Some((p, e)) = prev[cur] {
        path.push(e);
        cur = p;
    }
    path.reverse();
    path
}

/// Check a partition against the three conditions directly.
pub fn partition_satisfies(tile_set: &TileSet, partition: &ColorPartition) -> bool {
    let class = |c: &Color| partition.class(c);
    if class(&Color::white()) != ColorClass::One {
        return false;
    }
    if tile_set
        .tiles()
        .iter()
        .any(|t| class(&t.top) == class(&t.bottom))
    {
        return false;
    }
    let mut counts: HashMap<(bool, bool, &Color, &Color), usize> = HashMap::new();
    for t in tile_set.tiles() {
        let closing = t.bottom.is_white();
        let key = match class(&t.top) {
            ColorClass::One => (closing, true, &t.left, &t.top),
            ColorClass::Two => (closing, false, &t.right, &t.top),
        };
        *counts.entry(key).or_default() += 1;
    }
    counts.values().all(|&c| c <= 1)
}

/// Parity of an odd cycle, checked edge by edge: `true` when the listed
/// constraints cannot hold together.
pub fn counterexample_is_contradictory(constraints: &[Constraint]) -> bool {
    // each constraint relates two nodes; summing parities around a cycle
    // must give 1
    let node = |c: &Color| Some(c.clone());
    let mut total = 0u8;
    let mut degree: HashMap<Option<Color>, usize> = HashMap::new();
    for c in constraints {
        let (a, b, p) = match c {
            Constraint::WhiteIsOne => (node(&Color::white()), None, 0),
            Constraint::TopBottomDiffer { tile } => (node(&tile.top), node(&tile.bottom), 1),
            Constraint::SharedLeftKey { first, second } => {
                if first.left != second.left || first.top != second.top || first == second {
                    return false;
                }
                (node(&first.top), None, 1)
            }
            Constraint::SharedRightKey { first, second } => {
                if first.right != second.right || first.top != second.top || first == second {
                    return false;
                }
                (node(&first.top), None, 0)
            }
        };
        total ^= p;
        *degree.entry(a).or_default() += 1;
        *degree.entry(b).or_default() += 1;
    }
    !constraints.is_empty() && total == 1 && degree.values().all(|d| d % 2 == 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetError {
    #[error("tile set is not certified deterministic")]
    NotDeterministic,
    #[error("seed tile is not a member of the tile set")]
    SeedNotInSet,
    #[error("rectangle dimensions must be at least 1x1")]
    EmptyRectangle,
    #[error("{} candidates at ({row}, {col}); detector and completion disagree", candidates.len())]
    Nondeterministic {
        row: usize,
        col: usize,
        candidates: Vec<TileType>,
    },
    #[error("top color at ({row}, {col}) is in the wrong class for the row parity")]
    ParityViolation { row: usize, col: usize },
}

/// Outcome of a Boustrophedon completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    pub result: SolveResult,
    /// First cell with no candidate, when the completion failed.
    pub stuck_at: Option<(usize, usize)>,
    pub cells_visited: usize,
    /// Always zero; kept so callers can assert it.
    pub backtracks: usize,
}

/// Fill the rectangle row by row, odd rows left to right and even rows right
/// to left, placing the unique candidate at each cell.
pub fn boustrophedon_complete(
    tile_set: &TileSet,
    certificate: &DeterminismCertificate,
    seed: &TileType,
    height: usize,
    width: usize,
) -> Result<Completion, DetError> {
    let partition = match (&certificate.deterministic, &certificate.partition) {
        (true, Some(p)) => p,
        _ => return Err(DetError::NotDeterministic),
    };
    if !tile_set.contains(seed) {
        return Err(DetError::SeedNotInSet);
    }
    if height == 0 || width == 0 {
        return Err(DetError::EmptyRectangle);
    }
    let white = Color::white();
    let mut grid: Vec<Option<TileType>> = vec![None; height * width];
    let at = |r: usize, c: usize| (r - 1) * width + (c - 1);
    let mut cells_visited = 0;

    for row in 1..=height {
        let left_to_right = row % 2 == 1;
        let expected = if left_to_right {
            ColorClass::One
        } else {
            ColorClass::Two
        };
        let last = row == height;
        let cols: Vec<usize> = if left_to_right {
            (1..=width).collect()
        } else {
            (1..=width).rev().collect()
        };
        for col in cols {
            cells_visited += 1;
            let top = if row == 1 {
                white.clone()
            } else {
                grid[at(row - 1, col)].as_ref().expect("row above filled").bottom.clone()
            };
            if partition.class(&top) != expected {
                return Err(DetError::ParityViolation { row, col });
            }
            let left = if col == 1 {
                Some(white.clone())
            } else if left_to_right {
                Some(grid[at(row, col - 1)].as_ref().expect("filled").right.clone())
            } else {
                None
            };
            let right = if col == width {
                Some(white.clone())
            } else if !left_to_right {
                Some(grid[at(row, col + 1)].as_ref().expect("filled").left.clone())
            } else {
                None
            };
            let candidates: Vec<&TileType> = tile_set
                .tiles()
                .iter()
                .filter(|t| {
                    t.top == top
                        && left.as_ref().is_none_or(|l| &t.left == l)
                        && right.as_ref().is_none_or(|r| &t.right == r)
                        && t.bottom.is_white() == last
                        && ((row, col) != (1, 1) || *t == seed)
                })
                .collect();
            match candidates.as_slice() {
                [] => {
                    return Ok(Completion {
                        result: SolveResult {
                            exists: false,
                            witness: None,
                            stats: SolveStats {
                                rows_explored: row as u64,
                                states_memoized: 0,
                            },
                        },
                        stuck_at: Some((row, col)),
                        cells_visited,
                        backtracks: 0,
                    })
                }
                [only] => grid[at(row, col)] = Some((*only).clone()),
                many => {
                    return Err(DetError::Nondeterministic {
                        row,
                        col,
                        candidates: many.iter().map(|t| (*t).clone()).collect(),
                    })
                }
            }
        }
    }
    let cells = grid.into_iter().map(|c| c.expect("all cells filled")).collect();
    let tiling = Tiling::new(height, width, cells).expect("dimensions checked");
    Ok(Completion {
        result: SolveResult {
            exists: true,
            witness: Some(tiling),
            stats: SolveStats {
                rows_explored: height as u64,
                states_memoized: 0,
            },
        },
        stuck_at: None,
        cells_visited,
        backtracks: 0,
    })
}
