//! Tiling games where two players alternate placing whole rows.
//!
//! Player `E` wants the rectangle completed, `A` wants to prevent it. A player
//! who has no legal row stalls the game, and a stalled game is lost by `E`
//! whoever stalled. For arbitrary heights `E` wins as soon as a placed row has
//! white bottoms; a play that goes on forever is lost by `E`.
//!
//! Legal rows are horizontally valid, have white outer sides, match the row
//! above (white tops and the seed for the first row). Bottoms are never
//! constrained during play; they decide the outcome.

mod seq;

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solve::{first_rows, rows_below, RowIter, RowState, DEFAULT_BUDGET};
use crate::tile::Encoded;
use crate::tiling::{Height, TilingInstance};

pub use seq::{
    resolve_sequence, Atom, Block, Length, Player, PlayerSequence, RowOwners, MAX_EXPANDED_ROWS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GameOptions {
    /// Cap on enumerated rows.
    pub budget: u64,
}

impl Default for GameOptions {
    fn default() -> Self {
        GameOptions {
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct GameStats {
    pub states: u64,
    pub rows_explored: u64,
}

/// A game position: the next row to place, folded into the repeat cycle for
/// arbitrary heights, and the last placed row (`None` before the first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StrategyKey {
    pub position: usize,
    pub frontier: Option<RowState>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct StrategyEntry {
    position: usize,
    frontier: Option<RowState>,
    row: RowState,
}

/// A positional strategy for `E`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<StrategyEntry>", into = "Vec<StrategyEntry>")]
pub struct Strategy {
    pub entries: BTreeMap<StrategyKey, RowState>,
}

impl From<Vec<StrategyEntry>> for Strategy {
    fn from(v: Vec<StrategyEntry>) -> Self {
        Strategy {
            entries: v
                .into_iter()
                .map(|e| {
                    (
                        StrategyKey {
                            position: e.position,
                            frontier: e.frontier,
                        },
                        e.row,
                    )
                })
                .collect(),
        }
    }
}

impl From<Strategy> for Vec<StrategyEntry> {
    fn from(s: Strategy) -> Self {
        s.entries
            .into_iter()
            .map(|(k, row)| StrategyEntry {
                position: k.position,
                frontier: k.frontier,
                row,
            })
            .collect()
    }
}

impl Strategy {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, position: usize, frontier: Option<&RowState>) -> Option<&RowState> {
        self.entries.get(&StrategyKey {
            position,
            frontier: frontier.cloned(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameOutcome {
    pub winning: bool,
    /// Present exactly when `winning`.
    pub strategy: Option<Strategy>,
    pub stats: GameStats,
}

struct Rules<'a> {
    enc: &'a Encoded,
    owners: RowOwners,
    width: usize,
    seed: Option<u32>,
    budget: u64,
    stats: GameStats,
}

impl<'a> Rules<'a> {
    fn new(instance: &'a TilingInstance, seq: &PlayerSequence, n: u64, budget: u64) -> Result<Self> {
        let owners = resolve_sequence(seq, n)?;
        match (instance.height, owners.finite_len()) {
            (Height::Fixed(h), Some(len)) if len < h => {
                return Err(Error::SequenceExhausted { row: len + 1, len })
            }
            (Height::Arbitrary, Some(_)) => {
                return Err(Error::Invalid(
                    "arbitrary-height games need a repeating player sequence".into(),
                ))
            }
            _ => {}
        }
        Ok(Rules {
            enc: instance.tile_set.encoded(),
            owners,
            width: instance.width,
            seed: instance.seed_index(),
            budget,
            stats: GameStats::default(),
        })
    }

    fn moves(&self, frontier: Option<&RowState>) -> RowIter<'a> {
        match frontier {
            None => first_rows(self.enc, self.width, self.seed, false),
            Some(f) => rows_below(self.enc, f, false),
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.stats.rows_explored += 1;
        if self.stats.rows_explored > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        Ok(())
    }

    fn owner(&self, position: usize) -> Player {
        self.owners.owner(position).expect("sequence length checked")
    }
}

type Key = (usize, Option<RowState>);

/// Backward induction for fixed heights. `goal` is the player whose win is
/// computed; the two goals are evaluated by separate recursions so that they
/// can be checked against each other.
struct Minimax<'a> {
    rules: Rules<'a>,
    height: usize,
    goal: Player,
    memo: HashMap<Key, (bool, Option<RowState>)>,
}

impl Minimax<'_> {
    fn wins(&mut self, row: usize, frontier: Option<RowState>) -> Result<bool> {
        let key = (row, frontier);
        if let Some(&(w, _)) = self.memo.get(&key) {
            return Ok(w);
        }
        self.rules.stats.states += 1;
        let last = row == self.height;
        let mover = self.rules.owner(row);
        let moves = self.rules.moves(key.1.as_ref());
        let enc = self.rules.enc;
        let mut any = false;
        let mut result = None;
        for r in moves {
            self.rules.tick()?;
            any = true;
            let completed = last && r.bottoms_white(enc);
            let good = match (last, self.goal) {
                (true, Player::E) => completed,
                (true, Player::A) => !completed,
                (false, _) => self.wins(row + 1, Some(r.clone()))?,
            };
            if mover == self.goal && good {
                result = Some((true, Some(r)));
                break;
            }
            if mover != self.goal && !good {
                result = Some((false, None));
                break;
            }
        }
        // exhausted the moves: the mover found nothing good, or the opponent
        // could not refute; a stall counts against E
        let value = result.unwrap_or_else(|| {
            let stall_win = self.goal == Player::A;
            if !any {
                (stall_win, None)
            } else {
                (mover != self.goal, None)
            }
        });
        let w = value.0;
        self.memo.insert(key, value);
        Ok(w)
    }

    fn strategy(&mut self) -> Result<Strategy> {
        let mut entries = BTreeMap::new();
        let mut seen = HashSet::new();
        let mut stack: Vec<Key> = vec![(1, None)];
        while let Some(key) = stack.pop() {
            if !seen.insert(key.clone()) {
                continue;
            }
            let (row, frontier) = key.clone();
            let next: Vec<RowState> = if self.rules.owner(row) == Player::E {
                let choice = self.memo[&key].1.clone().expect("winning E node has a choice");
                entries.insert(
                    StrategyKey {
                        position: row,
                        frontier,
                    },
                    choice.clone(),
                );
                vec![choice]
            } else {
                self.rules.moves(frontier.as_ref()).collect()
            };
            if row < self.height {
                stack.extend(next.into_iter().map(|r| (row + 1, Some(r))));
            }
        }
        Ok(Strategy { entries })
    }
}

enum Move {
    Complete,
    To(usize),
}

/// The finite position graph of an arbitrary-height game.
struct Arena {
    keys: Vec<Key>,
    owners: Vec<Player>,
    moves: Vec<Vec<(RowState, Move)>>,
}

fn build_arena(rules: &mut Rules<'_>) -> Result<Arena> {
    let mut arena = Arena {
        keys: vec![(1, None)],
        owners: vec![rules.owner(1)],
        moves: Vec::new(),
    };
    let mut index: HashMap<Key, usize> = HashMap::from([((1, None), 0)]);
    let mut id = 0;
    while id < arena.keys.len() {
        rules.stats.states += 1;
        let (slot, frontier) = arena.keys[id].clone();
        let next_slot = rules.owners.next_slot(slot)?;
        let mut out = Vec::new();
        for r in rules.moves(frontier.as_ref()) {
            rules.tick()?;
            if r.bottoms_white(rules.enc) {
                out.push((r, Move::Complete));
                continue;
            }
            let key = (next_slot, Some(r.clone()));
            let target = *index.entry(key.clone()).or_insert_with(|| {
                arena.keys.push(key);
                arena.owners.push(rules.owner(next_slot));
                arena.keys.len() - 1
            });
            out.push((r, Move::To(target)));
        }
        arena.moves.push(out);
        id += 1;
    }
    Ok(arena)
}

/// Attractor for `E`: returns, per position, the chosen row of winning `E`
/// positions (`Some(None)` for winning `A` positions).
fn attractor(arena: &Arena) -> Vec<Option<Option<RowState>>> {
    let n = arena.keys.len();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, ms) in arena.moves.iter().enumerate() {
        for (_, m) in ms {
            if let Move::To(v) = m {
                preds[*v].push(u);
            }
        }
    }
    let mut won: Vec<Option<Option<RowState>>> = vec![None; n];
    let mut pending: Vec<usize> = vec![0; n];
    let mut queue = VecDeque::new();
    for u in 0..n {
        let ms = &arena.moves[u];
        match arena.owners[u] {
            Player::E => {
                if let Some((r, _)) = ms.iter().find(|(_, m)| matches!(m, Move::Complete)) {
                    won[u] = Some(Some(r.clone()));
                    queue.push_back(u);
                }
            }
            Player::A => {
                pending[u] = ms.iter().filter(|(_, m)| matches!(m, Move::To(_))).count();
                if !ms.is_empty() && pending[u] == 0 {
                    won[u] = Some(None);
                    queue.push_back(u);
                }
            }
        }
    }
    while let Some(v) = queue.pop_front() {
        for &u in &preds[v] {
            if won[u].is_some() {
                continue;
            }
            match arena.owners[u] {
                Player::E => {
                    let (r, _) = arena.moves[u]
                        .iter()
                        .find(|(_, m)| matches!(m, Move::To(t) if *t == v))
                        .expect("predecessor edge");
                    won[u] = Some(Some(r.clone()));
                    queue.push_back(u);
                }
                Player::A => {
                    pending[u] -= 1;
                    if pending[u] == 0 {
                        won[u] = Some(None);
                        queue.push_back(u);
                    }
                }
            }
        }
    }
    won
}

fn arena_strategy(arena: &Arena, won: &[Option<Option<RowState>>]) -> Strategy {
    let mut entries = BTreeMap::new();
    let mut seen = vec![false; arena.keys.len()];
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        if std::mem::replace(&mut seen[u], true) {
            continue;
        }
        let (position, frontier) = arena.keys[u].clone();
        for (r, m) in &arena.moves[u] {
            let chosen = match &won[u] {
                Some(Some(choice)) => choice == r,
                _ => true,
            };
            if !chosen {
                continue;
            }
            if arena.owners[u] == Player::E {
                entries.insert(
                    StrategyKey {
                        position,
                        frontier: frontier.clone(),
                    },
                    r.clone(),
                );
            }
            if let Move::To(v) = m {
                stack.push(*v);
            }
        }
    }
    Strategy { entries }
}

/// Decide whether `E` has a winning strategy and return one if so.
pub fn solve_game(
    instance: &TilingInstance,
    seq: &PlayerSequence,
    n: u64,
    opts: &GameOptions,
) -> Result<GameOutcome> {
    let mut rules = Rules::new(instance, seq, n, opts.budget)?;
    match instance.height {
        Height::Fixed(height) => {
            let mut mm = Minimax {
                rules,
                height,
                goal: Player::E,
                memo: HashMap::new(),
            };
            let winning = mm.wins(1, None)?;
            let strategy = if winning { Some(mm.strategy()?) } else { None };
            Ok(GameOutcome {
                winning,
                strategy,
                stats: mm.rules.stats,
            })
        }
        Height::Arbitrary => {
            let arena = build_arena(&mut rules)?;
            let won = attractor(&arena);
            let winning = won[0].is_some();
            Ok(GameOutcome {
                winning,
                strategy: winning.then(|| arena_strategy(&arena, &won)),
                stats: rules.stats,
            })
        }
    }
}

/// Decide whether `A` can prevent completion. Computed independently of
/// [`solve_game`]: by minimax toward `A`'s goal for fixed heights and as a
/// safety (greatest) fixpoint for arbitrary heights.
pub fn adversary_wins(
    instance: &TilingInstance,
    seq: &PlayerSequence,
    n: u64,
    opts: &GameOptions,
) -> Result<bool> {
    let mut rules = Rules::new(instance, seq, n, opts.budget)?;
    match instance.height {
        Height::Fixed(height) => Minimax {
            rules,
            height,
            goal: Player::A,
            memo: HashMap::new(),
        }
        .wins(1, None),
        Height::Arbitrary => {
            let arena = build_arena(&mut rules)?;
            let mut safe = vec![true; arena.keys.len()];
            loop {
                let mut changed = false;
                for u in 0..arena.keys.len() {
                    if !safe[u] {
                        continue;
                    }
                    let ms = &arena.moves[u];
                    let stays = |m: &Move| matches!(m, Move::To(v) if safe[*v]);
                    let keep = match arena.owners[u] {
                        // a stalled player loses the game for E
                        Player::A => ms.is_empty() || ms.iter().any(|(_, m)| stays(m)),
                        Player::E => ms.iter().all(|(_, m)| stays(m)),
                    };
                    if !keep {
                        safe[u] = false;
                        changed = true;
                    }
                }
                if !changed {
                    return Ok(safe[0]);
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FailReason {
    /// `E` had to move at a position the strategy does not cover.
    MissingEntry,
    /// The strategy's row is not a legal move.
    IllegalRow,
    /// The player to move had no legal row.
    Stalled(Player),
    /// The last row of a fixed-height game does not have white bottoms.
    NotTiled,
    /// Play can go on forever without a white-bottomed row.
    Cycle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass,
    /// A losing play, as the rows placed so far, and how it was lost.
    Fail { play: Vec<RowState>, reason: FailReason },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

struct Checker<'s, 'a> {
    rules: Rules<'a>,
    height: Option<usize>,
    strategy: &'s Strategy,
    passed: HashSet<Key>,
    on_path: HashSet<Key>,
    play: Vec<RowState>,
}

impl Checker<'_, '_> {
    fn fail(&self, reason: FailReason) -> Option<Verdict> {
        Some(Verdict::Fail {
            play: self.play.clone(),
            reason,
        })
    }

    /// Plays every `A` answer from `key`; returns the first failure found.
    fn check(&mut self, key: Key) -> Result<Option<Verdict>> {
        if self.passed.contains(&key) {
            return Ok(None);
        }
        if !self.on_path.insert(key.clone()) {
            return Ok(self.fail(FailReason::Cycle));
        }
        self.rules.stats.states += 1;
        let (position, frontier) = key.clone();
        let mover = self.rules.owner(position);
        let mut legal = Vec::new();
        for r in self.rules.moves(frontier.as_ref()) {
            self.rules.tick()?;
            legal.push(r);
        }
        let to_play = if mover == Player::E {
            match self.strategy.get(position, frontier.as_ref()) {
                None => return Ok(self.fail(FailReason::MissingEntry)),
                Some(r) if !legal.contains(r) => {
                    self.play.push(r.clone());
                    return Ok(self.fail(FailReason::IllegalRow));
                }
                Some(r) => vec![r.clone()],
            }
        } else {
            legal
        };
        if to_play.is_empty() {
            return Ok(self.fail(FailReason::Stalled(mover)));
        }
        for r in to_play {
            self.play.push(r.clone());
            let white = r.bottoms_white(self.rules.enc);
            let verdict = match self.height {
                Some(h) if position == h => (!white).then(|| self.fail(FailReason::NotTiled)).flatten(),
                Some(_) => self.check((position + 1, Some(r)))?,
                None if white => None,
                None => {
                    let next = self.rules.owners.next_slot(position)?;
                    self.check((next, Some(r)))?
                }
            };
            if verdict.is_some() {
                return Ok(verdict);
            }
            self.play.pop();
        }
        self.on_path.remove(&key);
        self.passed.insert(key);
        Ok(None)
    }
}

/// Play the strategy against every adversary answer. Exceeding
/// `adversary_budget` enumerated rows is an inconclusive error.
pub fn verify_strategy(
    instance: &TilingInstance,
    seq: &PlayerSequence,
    n: u64,
    strategy: &Strategy,
    adversary_budget: u64,
) -> Result<Verdict> {
    let rules = Rules::new(instance, seq, n, adversary_budget)?;
    let height = match instance.height {
        Height::Fixed(h) => Some(h),
        Height::Arbitrary => None,
    };
    let mut checker = Checker {
        rules,
        height,
        strategy,
        passed: HashSet::new(),
        on_path: HashSet::new(),
        play: Vec::new(),
    };
    Ok(checker.check((1, None))?.unwrap_or(Verdict::Pass))
}
