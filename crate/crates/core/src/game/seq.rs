//! Player sequences: which player places each row.
//!
//! Text grammar (whitespace is ignored, `∃`/`∀` are accepted for `E`/`A`):
//!
//! ```text
//! seq   := item* [item '*']
//! item  := atom ['^' len]
//! atom  := 'E' | 'A' | '(' item+ ')'
//! len   := INT | 'n' | INT '^n'
//! ```
//!
//! `E^2^n` is a block of `2^n` rows, `(EA)*` repeats forever.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Expanded sequences longer than this are refused.
pub const MAX_EXPANDED_ROWS: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    /// The player trying to complete the tiling.
    E,
    /// The adversary.
    A,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::E => Player::A,
            Player::A => Player::E,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::E => "E",
            Player::A => "A",
        })
    }
}

/// A block length, possibly depending on the size parameter `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Length {
    Const(u64),
    N,
    /// `base^n`.
    PowN(u64),
}

impl Length {
    pub fn resolve(self, n: u64) -> Result<u64> {
        match self {
            Length::Const(k) => Ok(k),
            Length::N => Ok(n),
            Length::PowN(b) => u32::try_from(n)
                .ok()
                .and_then(|e| b.checked_pow(e))
                .ok_or_else(|| Error::Overflow {
                    what: format!("{b}^{n}"),
                }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Player(Player),
    Group(Vec<Block>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub atom: Atom,
    pub count: Length,
}

impl Block {
    pub fn player(p: Player, count: Length) -> Block {
        Block {
            atom: Atom::Player(p),
            count,
        }
    }
}

/// A finite prefix of blocks followed by an optional cycle repeated forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayerSequence {
    pub prefix: Vec<Block>,
    pub repeat: Vec<Block>,
}

impl PlayerSequence {
    /// `E*`: every row belongs to the completing player.
    pub fn all_e() -> PlayerSequence {
        PlayerSequence {
            prefix: Vec::new(),
            repeat: vec![Block::player(Player::E, Length::Const(1))],
        }
    }

    /// `(EA)*`.
    pub fn alternating() -> PlayerSequence {
        PlayerSequence {
            prefix: Vec::new(),
            repeat: vec![
                Block::player(Player::E, Length::Const(1)),
                Block::player(Player::A, Length::Const(1)),
            ],
        }
    }

    pub fn is_infinite(&self) -> bool {
        !self.repeat.is_empty()
    }

    /// Swap the two players everywhere.
    pub fn dual(&self) -> PlayerSequence {
        fn flip(blocks: &[Block]) -> Vec<Block> {
            blocks
                .iter()
                .map(|b| Block {
                    atom: match &b.atom {
                        Atom::Player(p) => Atom::Player(p.other()),
                        Atom::Group(inner) => Atom::Group(flip(inner)),
                    },
                    count: b.count,
                })
                .collect()
        }
        PlayerSequence {
            prefix: flip(&self.prefix),
            repeat: flip(&self.repeat),
        }
    }
}

/// Row owners after binding `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowOwners {
    pub prefix: Vec<Player>,
    pub cycle: Vec<Player>,
}

impl RowOwners {
    /// Owner of the 1-based `row`.
    pub fn owner(&self, row: usize) -> Result<Player> {
        Ok(self.prefix_or_cycle(self.slot(row)?))
    }

    /// Position of `row` with the repeat cycle folded: rows past the first
    /// full cycle map back onto it. Equal slots have equal owners and equal
    /// futures.
    pub fn slot(&self, row: usize) -> Result<usize> {
        assert!(row >= 1, "rows are 1-based");
        let p = self.prefix.len();
        if row <= p {
            return Ok(row);
        }
        if self.cycle.is_empty() {
            return Err(Error::SequenceExhausted { row, len: p });
        }
        Ok(p + 1 + (row - p - 1) % self.cycle.len())
    }

    /// The slot that follows `slot`.
    pub fn next_slot(&self, slot: usize) -> Result<usize> {
        self.slot(slot + 1)
    }

    fn prefix_or_cycle(&self, slot: usize) -> Player {
        let p = self.prefix.len();
        if slot <= p {
            self.prefix[slot - 1]
        } else {
            self.cycle[slot - p - 1]
        }
    }

    /// Number of rows covered, `None` when the sequence repeats.
    pub fn finite_len(&self) -> Option<usize> {
        self.cycle.is_empty().then_some(self.prefix.len())
    }
}

fn expand(blocks: &[Block], n: u64, out: &mut Vec<Player>) -> Result<()> {
    for b in blocks {
        let count = b.count.resolve(n)?;
        if count == 0 {
            return Err(Error::Invalid("player sequence blocks must be non-empty".into()));
        }
        let start = out.len();
        match &b.atom {
            Atom::Player(p) => {
                check_len(start as u64, count)?;
                out.push(*p);
                out.resize(start + count as usize, *p);
            }
            Atom::Group(inner) => {
                expand(inner, n, out)?;
                let once = out.len() - start;
                check_len(start as u64, (once as u64).saturating_mul(count))?;
                for _ in 1..count {
                    out.extend_from_within(start..start + once);
                }
            }
        }
    }
    Ok(())
}

fn check_len(have: u64, more: u64) -> Result<()> {
    match have.checked_add(more) {
        Some(total) if total <= MAX_EXPANDED_ROWS => Ok(()),
        _ => Err(Error::Overflow {
            what: "player sequence expansion".into(),
        }),
    }
}

/// Bind `n` and expand all blocks.
pub fn resolve_sequence(seq: &PlayerSequence, n: u64) -> Result<RowOwners> {
    if n == 0 {
        return Err(Error::Invalid("the size parameter n must be at least 1".into()));
    }
    let mut prefix = Vec::new();
    expand(&seq.prefix, n, &mut prefix)?;
    let mut cycle = Vec::new();
    expand(&seq.repeat, n, &mut cycle)?;
    if prefix.is_empty() && cycle.is_empty() {
        return Err(Error::Invalid("empty player sequence".into()));
    }
    Ok(RowOwners { prefix, cycle })
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Const(1) => Ok(()),
            Length::Const(k) => write!(f, "^{k}"),
            Length::N => f.write_str("^n"),
            Length::PowN(b) => write!(f, "^{b}^n"),
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.atom {
            Atom::Player(p) => write!(f, "{p}")?,
            Atom::Group(inner) => {
                f.write_str("(")?;
                for b in inner {
                    write!(f, "{b}")?;
                }
                f.write_str(")")?;
            }
        }
        write!(f, "{}", self.count)
    }
}

impl fmt::Display for PlayerSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.prefix {
            write!(f, "{b}")?;
        }
        match self.repeat.as_slice() {
            [] => Ok(()),
            [single @ Block {
                atom: Atom::Player(_),
                count: Length::Const(1),
            }] => write!(f, "{single}*"),
            blocks => {
                f.write_str("(")?;
                for b in blocks {
                    write!(f, "{b}")?;
                }
                f.write_str(")*")
            }
        }
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Invalid(format!(
            "bad player sequence {:?} at offset {}: {msg}",
            self.src, self.pos
        ))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.err("expected a number"))
    }

    fn length(&mut self) -> Result<Length> {
        if !self.eat('^') {
            return Ok(Length::Const(1));
        }
        if self.eat('n') {
            return Ok(Length::N);
        }
        let k = self.int()?;
        if self.chars[self.pos..].starts_with(&['^', 'n']) {
            self.pos += 2;
            return Ok(Length::PowN(k));
        }
        if k == 0 {
            return Err(self.err("block length must be positive"));
        }
        Ok(Length::Const(k))
    }

    fn block(&mut self) -> Result<Block> {
        let atom = match self.peek() {
            Some('E' | '∃') => {
                self.pos += 1;
                Atom::Player(Player::E)
            }
            Some('A' | '∀') => {
                self.pos += 1;
                Atom::Player(Player::A)
            }
            Some('(') => {
                self.pos += 1;
                let mut inner = Vec::new();
                while !self.eat(')') {
                    if self.peek().is_none() {
                        return Err(self.err("unclosed group"));
                    }
                    inner.push(self.block()?);
                }
                if inner.is_empty() {
                    return Err(self.err("empty group"));
                }
                Atom::Group(inner)
            }
            _ => return Err(self.err("expected E, A or a group")),
        };
        let count = self.length()?;
        Ok(Block { atom, count })
    }
}

impl FromStr for PlayerSequence {
    type Err = Error;

    fn from_str(src: &str) -> Result<Self> {
        let mut p = Parser {
            chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            src,
        };
        let mut prefix = Vec::new();
        let mut repeat = Vec::new();
        while p.peek().is_some() {
            let b = p.block()?;
            if p.eat('*') {
                if p.peek().is_some() {
                    return Err(p.err("'*' may only follow the final item"));
                }
                repeat = match b {
                    Block {
                        atom: Atom::Group(inner),
                        count: Length::Const(1),
                    } => inner,
                    other => vec![other],
                };
            } else {
                prefix.push(b);
            }
        }
        if prefix.is_empty() && repeat.is_empty() {
            return Err(p.err("empty sequence"));
        }
        Ok(PlayerSequence { prefix, repeat })
    }
}

impl Serialize for PlayerSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PlayerSequence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Player::{A, E};

    fn owners(src: &str, n: u64, rows: usize) -> Vec<Player> {
        let r = resolve_sequence(&src.parse().unwrap(), n).unwrap();
        (1..=rows).map(|i| r.owner(i).unwrap()).collect()
    }

    #[test]
    fn alternating_rows() {
        assert_eq!(owners("(EA)*", 3, 6), vec![E, A, E, A, E, A]);
        assert_eq!(owners("E*", 1, 4), vec![E; 4]);
    }

    #[test]
    fn finite_sequence_is_exhausted() {
        let seq: PlayerSequence = "E^n(A^nE^n)^1".parse().unwrap();
        let r = resolve_sequence(&seq, 2).unwrap();
        assert_eq!(r.prefix, vec![E, E, A, A, E, E]);
        assert_eq!(r.finite_len(), Some(6));
        assert_eq!(r.owner(7), Err(Error::SequenceExhausted { row: 7, len: 6 }));
    }

    #[test]
    fn exponential_blocks() {
        let seq: PlayerSequence = "(E^2^nA^2^n)*".parse().unwrap();
        let r = resolve_sequence(&seq, 1).unwrap();
        assert_eq!(r.cycle, vec![E, E, A, A]);
        let r = resolve_sequence(&seq, 2).unwrap();
        assert_eq!(r.cycle, vec![E, E, E, E, A, A, A, A]);
        assert_eq!(r.owner(9).unwrap(), E);
        assert_eq!(r.owner(13).unwrap(), A);
        assert!(resolve_sequence(&seq, 40).is_err());
    }

    #[test]
    fn slots_fold_the_cycle() {
        let r = resolve_sequence(&"AE(EA)*".parse().unwrap(), 1).unwrap();
        assert_eq!(r.slot(2).unwrap(), 2);
        assert_eq!(r.slot(5).unwrap(), 3);
        assert_eq!(r.next_slot(4).unwrap(), 3);
        assert_eq!(r.owner(6).unwrap(), A);
    }

    #[test]
    fn printing_round_trips() {
        for src in ["(EA)*", "E*", "E^n(A^nE^n)^2", "(E^2^nA^2^n)*", "AE(E^3A)*", "(E^2)*"] {
            let seq: PlayerSequence = src.parse().unwrap();
            assert_eq!(seq.to_string(), src);
            assert_eq!(seq.to_string().parse::<PlayerSequence>().unwrap(), seq);
        }
        assert_eq!("∃ ∀ *".parse::<PlayerSequence>().unwrap().to_string(), "EA*");
    }

    #[test]
    fn malformed_sequences() {
        for bad in ["", "E**", "(EA", "E*A", "X", "E^0", "()", "E^"] {
            assert!(bad.parse::<PlayerSequence>().is_err(), "{bad}");
        }
    }

    #[test]
    fn dual_swaps_players() {
        let seq: PlayerSequence = "E^n(EA)*".parse().unwrap();
        assert_eq!(seq.dual().to_string(), "A^n(AE)*");
    }
}
