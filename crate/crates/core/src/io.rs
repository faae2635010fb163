//! File formats: JSON tile sets and instances, text graphs.
//!
//! Tile-set and instance JSON share one shape:
//!
//! ```json
//! {"tiles": [{"left": "white", "top": "white", "right": "a", "bottom": "b"}],
//!  "seed": null, "height": 3, "width": 2}
//! ```
//!
//! `height` is a number or `"*"` for arbitrary height; `n`, `height`,
//! `width` and `seq` (a player sequence) are optional.
//!
//! Graphs are text: a first line `s <name>`, a second line `t <name>`, then
//! one `u v` line per edge and one single-name line per isolated node.

use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::game::PlayerSequence;
use crate::tile::{TileSet, TileType};
use crate::tiling::{Height, TilingInstance};
use crate::width1::{DirectedGraph, UndirectedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub tiles: Vec<TileType>,
    #[serde(default)]
    pub seed: Option<TileType>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        serialize_with = "ser_height",
        deserialize_with = "de_height"
    )]
    pub height: Option<Height>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seq: Option<PlayerSequence>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum HeightRepr {
    Fixed(usize),
    Star(String),
}

fn ser_height<S: Serializer>(h: &Option<Height>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match h {
        Some(Height::Fixed(n)) => HeightRepr::Fixed(*n).serialize(s),
        Some(Height::Arbitrary) => HeightRepr::Star("*".into()).serialize(s),
        None => s.serialize_none(),
    }
}

fn de_height<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Height>, D::Error> {
    match HeightRepr::deserialize(d)? {
        HeightRepr::Fixed(n) => Ok(Some(Height::Fixed(n))),
        HeightRepr::Star(s) if s == "*" => Ok(Some(Height::Arbitrary)),
        HeightRepr::Star(s) => Err(serde::de::Error::custom(format!(
            "height must be a number or \"*\", got {s:?}"
        ))),
    }
}

impl InstanceFile {
    pub fn from_instance(instance: &TilingInstance) -> Self {
        InstanceFile {
            tiles: instance.tile_set.tiles().to_vec(),
            seed: instance.seed.clone(),
            n: Some(instance.n),
            height: Some(instance.height),
            width: Some(instance.width),
            seq: None,
        }
    }

    pub fn tile_set(&self) -> TileSet {
        TileSet::new(self.tiles.clone())
    }

    /// Build an instance, letting explicit arguments override the file.
    /// `n` defaults to the width.
    pub fn to_instance(&self, height: Option<Height>, width: Option<usize>) -> Result<TilingInstance> {
        let height = height
            .or(self.height)
            .ok_or_else(|| Error::Invalid("no height given".into()))?;
        let width = width
            .or(self.width)
            .ok_or_else(|| Error::Invalid("no width given".into()))?;
        TilingInstance::new(
            self.n.unwrap_or(width as u64),
            self.tile_set(),
            self.seed.clone(),
            height,
            width,
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }

    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::Invalid(format!("instance JSON: {e}")))
    }
}

struct GraphText {
    nodes: Vec<String>,
    edges: Vec<(String, String)>,
    source: String,
    target: String,
}

fn parse_graph_text(src: &str) -> Result<GraphText> {
    let mut lines = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, w)| !w.is_empty());
    let mut header = |key: &str| match lines.next() {
        Some((_, w)) if w.len() == 2 && w[0] == key => Ok(Some(w[1].to_string())),
        Some((i, _)) => Err(Error::Invalid(format!("graph line {i}: expected `{key} <name>`"))),
        None => Ok(None),
    };
    let source = header("s")?;
    let target = header("t")?;
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for (i, w) in lines {
        match w.as_slice() {
            [n] => nodes.push(n.to_string()),
            [u, v] => edges.push((u.to_string(), v.to_string())),
            _ => return Err(Error::Invalid(format!("graph line {i}: expected `u v` or a node"))),
        }
    }
    let missing = |what| Error::Invalid(format!("graph has no {what} line"));
    Ok(GraphText {
        nodes,
        edges,
        source: source.ok_or_else(|| missing("`s`"))?,
        target: target.ok_or_else(|| missing("`t`"))?,
    })
}

fn print_graph_text(
    nodes: &BTreeSet<String>,
    edges: &BTreeSet<(String, String)>,
    source: &str,
    target: &str,
) -> String {
    let mut out = format!("s {source}\nt {target}\n");
    let mut covered: BTreeSet<&str> = BTreeSet::from([source, target]);
    for (u, v) in edges {
        covered.insert(u);
        covered.insert(v);
    }
    for n in nodes.iter().filter(|n| !covered.contains(n.as_str())) {
        out += &format!("{n}\n");
    }
    for (u, v) in edges {
        out += &format!("{u} {v}\n");
    }
    out
}

pub fn parse_directed_graph(src: &str) -> Result<DirectedGraph> {
    let g = parse_graph_text(src)?;
    DirectedGraph::new(g.nodes, g.edges, g.source, g.target)
}

pub fn print_directed_graph(g: &DirectedGraph) -> String {
    print_graph_text(g.nodes(), g.edges(), g.source(), g.target())
}

pub fn parse_undirected_graph(src: &str) -> Result<UndirectedGraph> {
    let g = parse_graph_text(src)?;
    UndirectedGraph::new(g.nodes, g.edges, g.source, g.target)
}

pub fn print_undirected_graph(g: &UndirectedGraph) -> String {
    print_graph_text(g.nodes(), g.edges(), g.source(), g.target())
}
