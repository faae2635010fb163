//! Colors, tile types and tile sets.
//!
//! Sides are always named `left`, `top`, `right`, `bottom`. Some texts call the
//! vertical sides `up`/`down`; those are aliases of `top`/`bottom`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Spelling of the distinguished border color.
pub const WHITE_NAME: &str = "white";

/// A string-valued color. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Color(Arc<str>);

impl Color {
    pub fn new(name: impl AsRef<str>) -> Self {
        Color(Arc::from(name.as_ref()))
    }

    pub fn white() -> Self {
        Color::new(WHITE_NAME)
    }

    pub fn is_white(&self) -> bool {
        &*self.0 == WHITE_NAME
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Color {
    fn from(s: &str) -> Self {
        Color::new(s)
    }
}

impl From<String> for Color {
    fn from(s: String) -> Self {
        Color(Arc::from(s))
    }
}

impl Serialize for Color {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Color {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d).map(Color::from)
    }
}

/// The four side colors of a tile type.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TileType {
    pub left: Color,
    pub top: Color,
    pub right: Color,
    pub bottom: Color,
}

impl TileType {
    pub fn new(
        left: impl Into<Color>,
        top: impl Into<Color>,
        right: impl Into<Color>,
        bottom: impl Into<Color>,
    ) -> Self {
        TileType {
            left: left.into(),
            top: top.into(),
            right: right.into(),
            bottom: bottom.into(),
        }
    }

    /// 180 degree rotation: left and right swap, top and bottom swap.
    pub fn rotated(&self) -> TileType {
        TileType {
            left: self.right.clone(),
            top: self.bottom.clone(),
            right: self.left.clone(),
            bottom: self.top.clone(),
        }
    }

    /// Mirror along the main diagonal (left<->top, right<->bottom).
    pub fn transposed(&self) -> TileType {
        TileType {
            left: self.top.clone(),
            top: self.left.clone(),
            right: self.bottom.clone(),
            bottom: self.right.clone(),
        }
    }

    pub fn sides(&self) -> [&Color; 4] {
        [&self.left, &self.top, &self.right, &self.bottom]
    }

    pub fn map_colors(&self, mut f: impl FnMut(&Color) -> Color) -> TileType {
        TileType {
            left: f(&self.left),
            top: f(&self.top),
            right: f(&self.right),
            bottom: f(&self.bottom),
        }
    }
}

impl fmt::Debug for TileType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{}, {}, {}, {}>",
            self.left, self.top, self.right, self.bottom
        )
    }
}

impl fmt::Display for TileType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub(crate) const LEFT: usize = 0;
pub(crate) const TOP: usize = 1;
pub(crate) const RIGHT: usize = 2;
pub(crate) const BOTTOM: usize = 3;

/// Dense integer view of a tile set used by the search routines.
///
/// Color id 0 is always white. Tiles keep the tile set's order.
#[derive(Debug, Clone)]
pub(crate) struct Encoded {
    pub sides: Vec<[u32; 4]>,
    /// Tiles grouped by their left color, in tile order.
    pub by_left: Vec<Vec<u32>>,
}

impl Encoded {
    pub const WHITE: u32 = 0;

    fn build(tiles: &[TileType]) -> Encoded {
        let mut ids: HashMap<Color, u32> = HashMap::new();
        ids.insert(Color::white(), 0);
        let mut sides = Vec::with_capacity(tiles.len());
        for t in tiles {
            let mut enc = [0u32; 4];
            for (slot, c) in enc.iter_mut().zip(t.sides()) {
                let next = ids.len() as u32;
                *slot = *ids.entry(c.clone()).or_insert(next);
            }
            sides.push(enc);
        }
        let mut by_left = vec![Vec::new(); ids.len()];
        for (i, s) in sides.iter().enumerate() {
            by_left[s[LEFT] as usize].push(i as u32);
        }
        Encoded { sides, by_left }
    }

    #[inline]
    pub fn side(&self, tile: u32, side: usize) -> u32 {
        self.sides[tile as usize][side]
    }
}

/// A finite set of tile types. Insertion order is kept and defines the tile
/// indices used for witness tie-breaking; duplicates are dropped.
#[derive(Clone)]
pub struct TileSet {
    tiles: Vec<TileType>,
    index: HashMap<TileType, usize>,
    colors: BTreeSet<Color>,
    encoded: Encoded,
}

impl TileSet {
    pub fn new(tiles: impl IntoIterator<Item = TileType>) -> Self {
        let mut uniq = Vec::new();
        let mut index = HashMap::new();
        for t in tiles {
            if !index.contains_key(&t) {
                index.insert(t.clone(), uniq.len());
                uniq.push(t);
            }
        }
        let colors = uniq
            .iter()
            .flat_map(|t| t.sides().into_iter().cloned())
            .collect();
        let encoded = Encoded::build(&uniq);
        TileSet {
            tiles: uniq,
            index,
            colors,
            encoded,
        }
    }

    pub fn empty() -> Self {
        TileSet::new(Vec::new())
    }

    pub fn tiles(&self) -> &[TileType] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&TileType> {
        self.tiles.get(i)
    }

    pub fn index_of(&self, t: &TileType) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn contains(&self, t: &TileType) -> bool {
        self.index.contains_key(t)
    }

    /// Every color occurring on some side of some tile.
    pub fn colors(&self) -> &BTreeSet<Color> {
        &self.colors
    }

    pub(crate) fn encoded(&self) -> &Encoded {
        &self.encoded
    }
}

impl PartialEq for TileSet {
    fn eq(&self, other: &Self) -> bool {
        self.tiles == other.tiles
    }
}

impl Eq for TileSet {}

impl fmt::Debug for TileSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.tiles).finish()
    }
}

impl FromIterator<TileType> for TileSet {
    fn from_iter<I: IntoIterator<Item = TileType>>(iter: I) -> Self {
        TileSet::new(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_are_dropped_and_order_kept() {
        let a = TileType::new("white", "a", "white", "b");
        let b = TileType::new("white", "b", "white", "a");
        let set = TileSet::new(vec![a.clone(), b.clone(), a.clone()]);
        assert_eq!(set.tiles(), &[a, b]);
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn colors_are_union_of_sides() {
        let set = TileSet::new(vec![
            TileType::new("white", "x", "y", "z"),
            TileType::new("y", "z", "white", "white"),
        ]);
        let names: Vec<_> = set.colors().iter().map(|c| c.as_str()).collect();
        assert_eq!(names, vec!["white", "x", "y", "z"]);
    }

    #[test]
    fn white_encodes_as_zero() {
        let set = TileSet::new(vec![TileType::new("a", "white", "b", "white")]);
        assert_eq!(set.encoded().sides[0], [1, 0, 2, 0]);
    }

    #[test]
    fn rotation_is_an_involution() {
        let t = TileType::new("l", "t", "r", "b");
        assert_eq!(t.rotated(), TileType::new("r", "b", "l", "t"));
        assert_eq!(t.rotated().rotated(), t);
        assert_eq!(t.transposed().transposed(), t);
    }
}
