//! Normalized Turing machines: text format and the static checks.
//!
//! ```text
//! Q: q1 qf
//! Q': q0' qf'
//! init: q0'
//! final: qf
//! blank: _
//! q0' _ -> _ S qf
//! qf _ -> _ S qf'
//! qf' _ -> _ S qf
//! ```
//!
//! Optional headers are `final': <name>` (default: the final state with a
//! `'` appended) and `alphabet: <symbols>` (default: every symbol used by a
//! transition, plus the blank). Lines starting with `#` are comments.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::tile::WHITE_NAME;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    L,
    R,
    S,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Move::L => "L",
            Move::R => "R",
            Move::S => "S",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Transition {
    pub from: String,
    pub read: String,
    pub write: String,
    pub mv: Move,
    pub to: String,
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} -> {} {} {}",
            self.from, self.read, self.write, self.mv, self.to
        )
    }
}

/// A machine as written, before any checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineDesc {
    pub q: Vec<String>,
    pub q_prime: Vec<String>,
    pub initial: String,
    pub final_state: String,
    pub final_copy: Option<String>,
    pub alphabet: Option<Vec<String>>,
    pub blank: String,
    pub transitions: Vec<Transition>,
}

impl MachineDesc {
    pub fn final_copy(&self) -> String {
        self.final_copy
            .clone()
            .unwrap_or_else(|| format!("{}'", self.final_state))
    }
}

fn parse_err(line: usize, msg: impl fmt::Display) -> Error {
    Error::Invalid(format!("machine line {line}: {msg}"))
}

impl FromStr for MachineDesc {
    type Err = Error;

    fn from_str(src: &str) -> Result<Self, Error> {
        let mut headers: HashMap<&str, Vec<String>> = HashMap::new();
        let mut transitions = Vec::new();
        for (i, raw) in src.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some((head, rest)) = line.split_once(':') {
                let key = head.trim();
                if !matches!(key, "Q" | "Q'" | "init" | "final" | "final'" | "alphabet" | "blank") {
                    return Err(parse_err(i + 1, format!("unknown header {key:?}")));
                }
                let words = rest.split_whitespace().map(String::from).collect();
                if headers.insert(key, words).is_some() {
                    return Err(parse_err(i + 1, format!("duplicate header {key:?}")));
                }
                continue;
            }
            let w: Vec<&str> = line.split_whitespace().collect();
            let [from, read, "->", write, mv, to] = w.as_slice() else {
                return Err(parse_err(i + 1, "expected `q a -> b L|R|S q'`"));
            };
            let mv = match *mv {
                "L" => Move::L,
                "R" => Move::R,
                "S" => Move::S,
                other => return Err(parse_err(i + 1, format!("bad move {other:?}"))),
            };
            transitions.push(Transition {
                from: from.to_string(),
                read: read.to_string(),
                write: write.to_string(),
                mv,
                to: to.to_string(),
            });
        }
        let mut single = |key: &str| -> Result<Option<String>, Error> {
            match headers.remove(key) {
                None => Ok(None),
                Some(v) if v.len() == 1 => Ok(v.into_iter().next()),
                Some(_) => Err(Error::Invalid(format!("header {key:?} takes one name"))),
            }
        };
        let required = |v: Option<String>, key: &str| {
            v.ok_or_else(|| Error::Invalid(format!("missing header {key:?}")))
        };
        let initial = required(single("init")?, "init")?;
        let final_state = required(single("final")?, "final")?;
        let final_copy = single("final'")?;
        let blank = required(single("blank")?, "blank")?;
        Ok(MachineDesc {
            q: headers.remove("Q").unwrap_or_default(),
            q_prime: headers.remove("Q'").unwrap_or_default(),
            initial,
            final_state,
            final_copy,
            alphabet: headers.remove("alphabet"),
            blank,
            transitions,
        })
    }
}

impl fmt::Display for MachineDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Q: {}", self.q.join(" "))?;
        writeln!(f, "Q': {}", self.q_prime.join(" "))?;
        writeln!(f, "init: {}", self.initial)?;
        writeln!(f, "final: {}", self.final_state)?;
        if let Some(c) = &self.final_copy {
            writeln!(f, "final': {c}")?;
        }
        if let Some(a) = &self.alphabet {
            writeln!(f, "alphabet: {}", a.join(" "))?;
        }
        writeln!(f, "blank: {}", self.blank)?;
        for t in &self.transitions {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}

/// A broken condition of the normalized form. Condition 5 (erased tape on
/// acceptance) is not static; the simulator reports it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormViolation {
    #[error("name {0:?} is empty, reserved or contains a reserved character")]
    BadName(String),
    #[error("state {0:?} is declared in both Q and Q'")]
    SharedState(String),
    #[error("state {0:?} is not declared")]
    UnknownState(String),
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(String),
    #[error("initial state {0:?} is not in Q'")]
    InitialNotInQPrime(String),
    #[error("transition `{0}` leaves Q but does not go to Q' moving right or staying")]
    BadQTransition(Transition),
    #[error("transition `{0}` leaves Q' but does not go to Q moving left or staying")]
    BadQPrimeTransition(Transition),
    #[error("final state {0:?} is not in Q")]
    FinalNotInQ(String),
    #[error("final copy {0:?} is not in Q'")]
    FinalCopyNotInQPrime(String),
    #[error("missing shuttle transition `{0}`")]
    MissingShuttle(Transition),
    #[error("transition `{0}` leaves a final state without being a shuttle")]
    BadShuttle(Transition),
}

impl NormViolation {
    /// Number of the normalized-form condition, 0 for naming problems.
    pub fn condition(&self) -> u8 {
        match self {
            NormViolation::BadName(_)
            | NormViolation::UnknownState(_)
            | NormViolation::UnknownSymbol(_) => 0,
            NormViolation::SharedState(_) | NormViolation::InitialNotInQPrime(_) => 1,
            NormViolation::BadQTransition(_) => 2,
            NormViolation::BadQPrimeTransition(_) => 3,
            NormViolation::FinalNotInQ(_) | NormViolation::FinalCopyNotInQPrime(_) => 4,
            NormViolation::MissingShuttle(_) | NormViolation::BadShuttle(_) => 6,
        }
    }
}

/// Reserved in every name: they build composite colors.
const RESERVED: [char; 2] = [',', '#'];

fn state_name_ok(s: &str) -> bool {
    !s.is_empty() && s != WHITE_NAME && !s.contains(RESERVED) && !s.contains(char::is_whitespace)
}

fn symbol_name_ok(s: &str) -> bool {
    state_name_ok(s) && !s.contains('\'')
}

/// `(write, move, next)` for one (state, symbol) pair.
pub type Action = (u16, Move, u16);

/// A machine that passed [`check_normalized`]. States and symbols are
/// numbered: states in `Q` first, then `Q'`; symbol 0 is the blank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedTm {
    desc: MachineDesc,
    states: Vec<String>,
    q_len: usize,
    symbols: Vec<String>,
    initial: u16,
    final_state: u16,
    final_copy: u16,
    /// `(state, symbol) -> [(write, move, next)]` in file order.
    delta: HashMap<(u16, u16), Vec<Action>>,
}

pub fn check_normalized(desc: &MachineDesc) -> Result<NormalizedTm, Vec<NormViolation>> {
    let mut v = Vec::new();
    let q: BTreeSet<&str> = desc.q.iter().map(String::as_str).collect();
    let qp: BTreeSet<&str> = desc.q_prime.iter().map(String::as_str).collect();
    for s in desc.q.iter().chain(&desc.q_prime) {
        if !state_name_ok(s) {
            v.push(NormViolation::BadName(s.clone()));
        }
    }
    for s in q.intersection(&qp) {
        v.push(NormViolation::SharedState(s.to_string()));
    }
    let mut symbols: Vec<String> = vec![desc.blank.clone()];
    match &desc.alphabet {
        Some(a) => symbols.extend(a.iter().filter(|s| **s != desc.blank).cloned()),
        None => {
            for t in &desc.transitions {
                symbols.push(t.read.clone());
                symbols.push(t.write.clone());
            }
        }
    }
    let mut seen = BTreeSet::new();
    symbols.retain(|s| seen.insert(s.clone()));
    for s in &symbols {
        if !symbol_name_ok(s) {
            v.push(NormViolation::BadName(s.clone()));
        }
    }
    let final_copy = desc.final_copy();
    if !qp.contains(desc.initial.as_str()) {
        v.push(NormViolation::InitialNotInQPrime(desc.initial.clone()));
    }
    if !q.contains(desc.final_state.as_str()) {
        v.push(NormViolation::FinalNotInQ(desc.final_state.clone()));
    }
    if !qp.contains(final_copy.as_str()) {
        v.push(NormViolation::FinalCopyNotInQPrime(final_copy.clone()));
    }
    let known = |s: &str| q.contains(s) || qp.contains(s);
    for t in &desc.transitions {
        for s in [&t.from, &t.to] {
            if !known(s) {
                v.push(NormViolation::UnknownState(s.clone()));
            }
        }
        for s in [&t.read, &t.write] {
            if !symbols.contains(s) {
                v.push(NormViolation::UnknownSymbol(s.clone()));
            }
        }
        if t.from == desc.final_state || t.from == final_copy {
            let partner = if t.from == desc.final_state { &final_copy } else { &desc.final_state };
            if t.read != t.write || t.mv != Move::S || &t.to != partner {
                v.push(NormViolation::BadShuttle(t.clone()));
            }
        }
        if q.contains(t.from.as_str()) && (t.mv == Move::L || !qp.contains(t.to.as_str())) {
            v.push(NormViolation::BadQTransition(t.clone()));
        }
        if qp.contains(t.from.as_str()) && (t.mv == Move::R || !q.contains(t.to.as_str())) {
            v.push(NormViolation::BadQPrimeTransition(t.clone()));
        }
    }
    for (from, to) in [(&desc.final_state, &final_copy), (&final_copy, &desc.final_state)] {
        let shuttle = Transition {
            from: from.clone(),
            read: desc.blank.clone(),
            write: desc.blank.clone(),
            mv: Move::S,
            to: to.clone(),
        };
        if !desc.transitions.contains(&shuttle) {
            v.push(NormViolation::MissingShuttle(shuttle));
        }
    }
    if !v.is_empty() {
        v.dedup();
        return Err(v);
    }

    let states: Vec<String> = desc.q.iter().chain(&desc.q_prime).cloned().collect();
    let sid = |s: &str| states.iter().position(|x| x == s).unwrap() as u16;
    let yid = |s: &str| symbols.iter().position(|x| x == s).unwrap() as u16;
    let mut delta: HashMap<(u16, u16), Vec<Action>> = HashMap::new();
    for t in &desc.transitions {
        let entry = delta.entry((sid(&t.from), yid(&t.read))).or_default();
        let act = (yid(&t.write), t.mv, sid(&t.to));
        if !entry.contains(&act) {
            entry.push(act);
        }
    }
    Ok(NormalizedTm {
        desc: desc.clone(),
        q_len: desc.q.len(),
        initial: sid(&desc.initial),
        final_state: sid(&desc.final_state),
        final_copy: sid(&final_copy),
        states,
        symbols,
        delta,
    })
}

impl NormalizedTm {
    pub fn desc(&self) -> &MachineDesc {
        &self.desc
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn blank(&self) -> &str {
        &self.symbols[0]
    }

    pub fn is_primed(&self, state: u16) -> bool {
        state as usize >= self.q_len
    }

    pub fn initial(&self) -> u16 {
        self.initial
    }

    pub fn final_state(&self) -> u16 {
        self.final_state
    }

    pub fn final_copy(&self) -> u16 {
        self.final_copy
    }

    pub fn state_id(&self, name: &str) -> Option<u16> {
        self.states.iter().position(|x| x == name).map(|i| i as u16)
    }

    pub fn symbol_id(&self, name: &str) -> Option<u16> {
        self.symbols.iter().position(|x| x == name).map(|i| i as u16)
    }

    pub fn actions(&self, state: u16, symbol: u16) -> &[Action] {
        self.delta.get(&(state, symbol)).map_or(&[], Vec::as_slice)
    }

    /// At most one action per (state, symbol).
    pub fn is_deterministic(&self) -> bool {
        self.delta.values().all(|a| a.len() <= 1)
    }

    /// Every transition, as ids, in file order without duplicates.
    pub fn transitions(&self) -> Vec<(u16, u16, u16, Move, u16)> {
        let mut out: Vec<_> = Vec::new();
        for t in &self.desc.transitions {
            let tr = (
                self.state_id(&t.from).unwrap(),
                self.symbol_id(&t.read).unwrap(),
                self.symbol_id(&t.write).unwrap(),
                t.mv,
                self.state_id(&t.to).unwrap(),
            );
            if !out.contains(&tr) {
                out.push(tr);
            }
        }
        out
    }

    /// Symbols of an input word: whitespace separated if it contains
    /// whitespace, one symbol per character otherwise.
    pub fn parse_word(&self, word: &str) -> Result<Vec<u16>, Error> {
        let parts: Vec<String> = if word.contains(char::is_whitespace) {
            word.split_whitespace().map(String::from).collect()
        } else {
            word.chars().map(String::from).collect()
        };
        parts
            .iter()
            .map(|s| {
                self.symbol_id(s)
                    .filter(|&id| id != 0)
                    .ok_or_else(|| Error::Invalid(format!("input symbol {s:?} is not a non-blank alphabet symbol")))
            })
            .collect()
    }
}
