//! Reference simulator on a tape of bounded width.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::machine::{Move, NormalizedTm};
use crate::error::{Error, Result};

/// A configuration on a tape of fixed width. `head` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Config {
    pub tape: Vec<u16>,
    pub head: usize,
    pub state: u16,
}

impl Config {
    pub fn initial(tm: &NormalizedTm, input: &[u16], width: usize) -> Result<Config> {
        if input.len() > width {
            return Err(Error::Invalid(format!(
                "input of length {} does not fit in {width} cells",
                input.len()
            )));
        }
        let mut tape = input.to_vec();
        tape.resize(width, 0);
        Ok(Config {
            tape,
            head: 1,
            state: tm.initial(),
        })
    }

    pub fn tape_erased(&self) -> bool {
        self.tape.iter().all(|&s| s == 0)
    }

    /// The final copy state on an erased tape: what a closing row expects.
    pub fn is_closable(&self, tm: &NormalizedTm) -> bool {
        self.state == tm.final_copy() && self.tape_erased()
    }

    pub fn named(&self, tm: &NormalizedTm) -> TmConfig {
        TmConfig {
            tape: self.tape.iter().map(|&s| tm.symbols()[s as usize].clone()).collect(),
            head: self.head,
            state: tm.states()[self.state as usize].clone(),
        }
    }
}

/// A configuration with names instead of ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TmConfig {
    pub tape: Vec<String>,
    pub head: usize,
    pub state: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StuckReason {
    NoTransition,
    FellOffLeft,
    OutOfCells,
    /// Reached the final state with symbols left on the tape.
    TapeNotErased,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Accepted { step: usize },
    Stuck { step: usize, reason: StuckReason },
    Running,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimRun {
    pub outcome: Outcome,
    /// Configurations from step 0 on.
    pub trace: Vec<Config>,
}

enum Step {
    To(Config),
    Stuck(StuckReason),
}

fn apply(c: &Config, write: u16, mv: Move, next: u16) -> Step {
    let head = match mv {
        Move::L if c.head == 1 => return Step::Stuck(StuckReason::FellOffLeft),
        Move::L => c.head - 1,
        Move::R if c.head == c.tape.len() => return Step::Stuck(StuckReason::OutOfCells),
        Move::R => c.head + 1,
        Move::S => c.head,
    };
    let mut tape = c.tape.clone();
    tape[c.head - 1] = write;
    Step::To(Config {
        tape,
        head,
        state: next,
    })
}

/// All configurations one step after `c` that stay on the tape.
pub fn successors(tm: &NormalizedTm, c: &Config) -> Vec<Config> {
    tm.actions(c.state, c.tape[c.head - 1])
        .iter()
        .filter_map(|&(w, mv, q)| match apply(c, w, mv, q) {
            Step::To(n) => Some(n),
            Step::Stuck(_) => None,
        })
        .collect()
}

/// Run a deterministic machine for at most `max_steps` steps on
/// `max_cells` cells. Acceptance is reaching the final state on an erased
/// tape.
pub fn simulate(tm: &NormalizedTm, input: &[u16], max_steps: usize, max_cells: usize) -> Result<SimRun> {
    if !tm.is_deterministic() {
        return Err(Error::Invalid(
            "simulate needs a deterministic machine; use successors for the others".into(),
        ));
    }
    if max_cells == 0 {
        return Err(Error::Invalid("max_cells must be positive".into()));
    }
    let mut trace = vec![Config::initial(tm, input, max_cells)?];
    loop {
        let step = trace.len() - 1;
        let c = &trace[step];
        if c.state == tm.final_state() {
            let outcome = if c.tape_erased() {
                Outcome::Accepted { step }
            } else {
                Outcome::Stuck {
                    step,
                    reason: StuckReason::TapeNotErased,
                }
            };
            return Ok(SimRun { outcome, trace });
        }
        if step == max_steps {
            return Ok(SimRun {
                outcome: Outcome::Running,
                trace,
            });
        }
        let next = match tm.actions(c.state, c.tape[c.head - 1]).first() {
            None => Step::Stuck(StuckReason::NoTransition),
            Some(&(w, mv, q)) => apply(c, w, mv, q),
        };
        match next {
            Step::To(n) => trace.push(n),
            Step::Stuck(reason) => {
                return Ok(SimRun {
                    outcome: Outcome::Stuck {
                        step: step + 1,
                        reason,
                    },
                    trace,
                })
            }
        }
    }
}

/// Whether some run within `width` cells is in the final copy state on an
/// erased tape after exactly `steps` steps.
pub fn closable_at(tm: &NormalizedTm, input: &[u16], width: usize, steps: usize) -> Result<bool> {
    let mut layer: HashSet<Config> = HashSet::from([Config::initial(tm, input, width)?]);
    for _ in 0..steps {
        layer = layer.iter().flat_map(|c| successors(tm, c)).collect();
        if layer.is_empty() {
            return Ok(false);
        }
    }
    Ok(layer.iter().any(|c| c.is_closable(tm)))
}

/// Fewest steps after which some run within `width` cells can be closed,
/// searching every reachable configuration.
pub fn min_closable_steps(tm: &NormalizedTm, input: &[u16], width: usize) -> Result<Option<usize>> {
    let start = Config::initial(tm, input, width)?;
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0)]);
    while let Some((c, d)) = queue.pop_front() {
        if c.is_closable(tm) {
            return Ok(Some(d));
        }
        for n in successors(tm, &c) {
            if seen.insert(n.clone()) {
                queue.push_back((n, d + 1));
            }
        }
    }
    Ok(None)
}
