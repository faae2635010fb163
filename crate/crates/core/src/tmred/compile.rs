//! From a machine and an input word to a tile set whose tilings are runs.
//!
//! Row `k` of a tiling shows configuration `k - 1` on its bottom side.
//! Configurations of even steps carry primed symbols and a state of `Q'`,
//! odd steps unprimed symbols and a state of `Q`. The first row writes the
//! input; a last row of closing tiles accepts the final copy state on an
//! erased tape.

use std::collections::HashMap;

use super::machine::{Move, NormalizedTm};
use super::TmredError;
use crate::tile::{Color, TileSet, TileType};
use crate::tiling::{Height, TilingInstance};

/// What a vertical color says about one tape cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellColor {
    pub symbol: u16,
    pub primed: bool,
    /// The head and its state, if the head is on this cell.
    pub state: Option<u16>,
}

pub(crate) struct Palette<'a> {
    tm: &'a NormalizedTm,
}

impl<'a> Palette<'a> {
    pub fn new(tm: &'a NormalizedTm) -> Self {
        Palette { tm }
    }

    pub fn symbol(&self, s: u16, primed: bool) -> Color {
        let name = &self.tm.symbols()[s as usize];
        if primed {
            Color::new(format!("{name}'"))
        } else {
            Color::new(name)
        }
    }

    /// The head in `state` over `s`; primed exactly for states of `Q'`.
    pub fn head(&self, state: u16, s: u16) -> Color {
        let primed = self.tm.is_primed(state);
        let q = &self.tm.states()[state as usize];
        Color::new(format!("{q},{}", self.symbol(s, primed)))
    }

    pub fn state(&self, state: u16) -> Color {
        Color::new(&self.tm.states()[state as usize])
    }

    pub fn position(&self, col: usize) -> Color {
        Color::new(format!("#{col}"))
    }

    /// Vertical color of a cell: the head color if the head is there.
    pub fn cell(&self, s: u16, primed: bool, head: Option<u16>) -> Color {
        match head {
            Some(q) => self.head(q, s),
            None => self.symbol(s, primed),
        }
    }

    pub fn decoding(&self) -> HashMap<Color, CellColor> {
        let mut map = HashMap::new();
        for s in 0..self.tm.symbols().len() as u16 {
            for primed in [false, true] {
                map.insert(
                    self.symbol(s, primed),
                    CellColor {
                        symbol: s,
                        primed,
                        state: None,
                    },
                );
            }
            for q in 0..self.tm.states().len() as u16 {
                map.insert(
                    self.head(q, s),
                    CellColor {
                        symbol: s,
                        primed: self.tm.is_primed(q),
                        state: Some(q),
                    },
                );
            }
        }
        map
    }

    /// Tiles writing `input` padded with blanks, head on cell 1.
    pub fn first_row(&self, input: &[u16], width: usize) -> Vec<TileType> {
        let white = Color::white();
        (1..=width)
            .map(|j| {
                let s = input.get(j - 1).copied().unwrap_or(0);
                let head = (j == 1).then_some(self.tm.initial());
                TileType::new(
                    if j == 1 { white.clone() } else { self.position(j) },
                    white.clone(),
                    if j < width { self.position(j + 1) } else { white.clone() },
                    self.cell(s, true, head),
                )
            })
            .collect()
    }

    pub fn copy(&self, s: u16, top_primed: bool) -> TileType {
        let w = Color::white();
        TileType::new(w.clone(), self.symbol(s, top_primed), w, self.symbol(s, !top_primed))
    }

    /// The cell the head arrives at after moving right into `state`.
    pub fn receive_left(&self, state: u16, s: u16) -> TileType {
        TileType::new(self.state(state), self.symbol(s, false), Color::white(), self.head(state, s))
    }

    /// The cell the head arrives at after moving left into `state`.
    pub fn receive_right(&self, state: u16, s: u16) -> TileType {
        TileType::new(Color::white(), self.symbol(s, true), self.state(state), self.head(state, s))
    }

    /// The head cell of transition `(from, read, write, mv, to)`.
    pub fn transition(&self, from: u16, read: u16, write: u16, mv: Move, to: u16) -> TileType {
        let w = Color::white();
        let top = self.head(from, read);
        let primed = self.tm.is_primed(to);
        match mv {
            Move::R => TileType::new(w, top, self.state(to), self.symbol(write, primed)),
            Move::L => TileType::new(self.state(to), top, w, self.symbol(write, primed)),
            Move::S => TileType::new(w.clone(), top, w, self.head(to, write)),
        }
    }

    pub fn closing(&self, head: bool) -> TileType {
        let w = Color::white();
        let top = if head {
            self.head(self.tm.final_copy(), 0)
        } else {
            self.symbol(0, true)
        };
        TileType::new(w.clone(), top, w.clone(), w)
    }
}

/// A compiled instance together with what is needed to read tilings back.
#[derive(Debug, Clone)]
pub struct CompiledTm {
    pub instance: TilingInstance,
    pub machine: NormalizedTm,
    pub input: Vec<u16>,
    pub(crate) decoding: HashMap<Color, CellColor>,
}

impl CompiledTm {
    pub fn width(&self) -> usize {
        self.instance.width
    }

    /// The same tile set on a rectangle of another height.
    pub fn with_height(&self, height: Height) -> CompiledTm {
        CompiledTm {
            instance: self.instance.with_height(height).expect("height is positive"),
            ..self.clone()
        }
    }

    pub fn decode_color(&self, c: &Color) -> Option<CellColor> {
        self.decoding.get(c).copied()
    }
}

/// Build the tile set for `tm` on `input` in a rectangle `width` cells wide.
/// The instance is the `width x width` square.
pub fn compile_tileset(tm: &NormalizedTm, input: &[u16], width: usize) -> Result<CompiledTm, TmredError> {
    if width == 0 || input.len() > width {
        return Err(TmredError::TooNarrow {
            input: input.len(),
            width,
        });
    }
    let p = Palette::new(tm);
    let mut tiles = p.first_row(input, width);
    let symbols = 0..tm.symbols().len() as u16;
    for s in symbols.clone() {
        tiles.push(p.copy(s, false));
        tiles.push(p.copy(s, true));
    }
    for q in 0..tm.states().len() as u16 {
        for s in symbols.clone() {
            tiles.push(if tm.is_primed(q) {
                p.receive_left(q, s)
            } else {
                p.receive_right(q, s)
            });
        }
    }
    for (from, read, write, mv, to) in tm.transitions() {
        tiles.push(p.transition(from, read, write, mv, to));
    }
    tiles.push(p.closing(false));
    tiles.push(p.closing(true));
    let seed = tiles[0].clone();
    let instance = TilingInstance::new(
        width as u64,
        TileSet::new(tiles),
        Some(seed),
        Height::Fixed(width),
        width,
    )?;
    Ok(CompiledTm {
        instance,
        machine: tm.clone(),
        input: input.to_vec(),
        decoding: p.decoding(),
    })
}
