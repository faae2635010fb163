//! Width-one tilings and their correspondence with graph reachability.
//!
//! With a single column both side colors of every placed tile must be white,
//! so a tiling is a vertical chain of tiles whose bottoms match the next tops.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::tile::{Color, TileSet, TileType};
use crate::tiling::{Height, TilingInstance};

/// A directed graph with a distinguished source and target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    nodes: BTreeSet<String>,
    edges: BTreeSet<(String, String)>,
    source: String,
    target: String,
}

/// An undirected graph with a distinguished source and target. Edges are
/// stored with their endpoints ordered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    nodes: BTreeSet<String>,
    edges: BTreeSet<(String, String)>,
    source: String,
    target: String,
}

fn check_node_name(n: &str) -> Result<()> {
    if n.is_empty() || n.chars().any(char::is_whitespace) || n == crate::tile::WHITE_NAME {
        return Err(Error::Invalid(format!("invalid node name {n:?}")));
    }
    Ok(())
}

macro_rules! graph_common {
    ($ty:ident) => {
        impl $ty {
            pub fn nodes(&self) -> &BTreeSet<String> {
                &self.nodes
            }

            pub fn edges(&self) -> &BTreeSet<(String, String)> {
                &self.edges
            }

            pub fn source(&self) -> &str {
                &self.source
            }

            pub fn target(&self) -> &str {
                &self.target
            }
        }
    };
}

graph_common!(DirectedGraph);
graph_common!(UndirectedGraph);

impl DirectedGraph {
    /// Nodes mentioned by edges, source or target are added implicitly.
    pub fn new(
        nodes: impl IntoIterator<Item = String>,
        edges: impl IntoIterator<Item = (String, String)>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Result<Self> {
        let source = source.into();
        let target = target.into();
        let edges: BTreeSet<_> = edges.into_iter().collect();
        let mut nodes: BTreeSet<String> = nodes.into_iter().collect();
        nodes.insert(source.clone());
        nodes.insert(target.clone());
        for (u, v) in &edges {
            nodes.insert(u.clone());
            nodes.insert(v.clone());
        }
        for n in &nodes {
            check_node_name(n)?;
        }
        Ok(DirectedGraph {
            nodes,
            edges,
            source,
            target,
        })
    }

    /// Breadth-first search from source to target.
    pub fn reachable(&self) -> bool {
        let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (u, v) in &self.edges {
            adj.entry(u).or_default().push(v);
        }
        let mut seen = HashSet::from([self.source.as_str()]);
        let mut queue = VecDeque::from([self.source.as_str()]);
        while let Some(u) = queue.pop_front() {
            if u == self.target {
                return true;
            }
            for &v in adj.get(u).into_iter().flatten() {
                if seen.insert(v) {
                    queue.push_back(v);
                }
            }
        }
        false
    }
}

impl UndirectedGraph {
    pub fn new(
        nodes: impl IntoIterator<Item = String>,
        edges: impl IntoIterator<Item = (String, String)>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Result<Self> {
        let source = source.into();
        let target = target.into();
        let edges: BTreeSet<_> = edges
            .into_iter()
            .map(|(u, v)| if u <= v { (u, v) } else { (v, u) })
            .collect();
        let mut nodes: BTreeSet<String> = nodes.into_iter().collect();
        nodes.insert(source.clone());
        nodes.insert(target.clone());
        for (u, v) in &edges {
            nodes.insert(u.clone());
            nodes.insert(v.clone());
        }
        for n in &nodes {
            check_node_name(n)?;
        }
        Ok(UndirectedGraph {
            nodes,
            edges,
            source,
            target,
        })
    }
}

/// Connectivity of source and target by breadth-first search.
pub fn undirected_reachable(g: &UndirectedGraph) -> bool {
    let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (u, v) in &g.edges {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let mut seen = HashSet::from([g.source.as_str()]);
    let mut queue = VecDeque::from([g.source.as_str()]);
    while let Some(u) = queue.pop_front() {
        if u == g.target {
            return true;
        }
        for &v in adj.get(u).into_iter().flatten() {
            if seen.insert(v) {
                queue.push_back(v);
            }
        }
    }
    false
}

fn fits_column(t: &TileType) -> bool {
    t.left.is_white() && t.right.is_white()
}

/// Whether a vertical chain of `height` tiles (or of some length, for
/// [`Height::Arbitrary`]) runs from `seed` to a white-bottomed tile.
pub fn solve_line(tile_set: &TileSet, seed: &TileType, height: Height) -> bool {
    if !tile_set.contains(seed) || !fits_column(seed) || !seed.top.is_white() {
        return false;
    }
    let usable: Vec<&TileType> = tile_set.tiles().iter().filter(|t| fits_column(t)).collect();
    let below = |t: &TileType| -> Vec<usize> {
        usable
            .iter()
            .enumerate()
            .filter(|(_, u)| u.top == t.bottom)
            .map(|(i, _)| i)
            .collect()
    };
    let start = usable.iter().position(|t| *t == seed).expect("seed is usable");
    match height {
        Height::Fixed(n) => {
            let mut layer: BTreeSet<usize> = BTreeSet::from([start]);
            for _ in 1..n {
                layer = layer.iter().flat_map(|&i| below(usable[i])).collect();
                if layer.is_empty() {
                    return false;
                }
            }
            layer.iter().any(|&i| usable[i].bottom.is_white())
        }
        Height::Arbitrary => {
            // a shortest chain never repeats a tile, so |T| steps suffice
            let mut seen = vec![false; usable.len()];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                if usable[i].bottom.is_white() {
                    return true;
                }
                for j in below(usable[i]) {
                    if !seen[j] {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
            false
        }
    }
}

/// Encode s-t reachability as a width-one tiling instance of height
/// `2 + |nodes|`.
pub fn graph_to_tiles(g: &DirectedGraph) -> TilingInstance {
    let white = Color::white();
    let s = Color::new(&g.source);
    let t = Color::new(&g.target);
    let seed = TileType::new(white.clone(), white.clone(), white.clone(), s.clone());
    let mut tiles = vec![
        seed.clone(),
        TileType::new(white.clone(), s.clone(), white.clone(), s),
        TileType::new(white.clone(), t, white.clone(), white.clone()),
    ];
    for (u, v) in &g.edges {
        tiles.push(TileType::new(white.clone(), u.as_str(), white.clone(), v.as_str()));
    }
    let height = 2 + g.nodes.len();
    TilingInstance::new(height as u64, TileSet::new(tiles), Some(seed), Height::Fixed(height), 1)
        .expect("well-formed by construction")
}

/// Tiles whose 180 degree rotation is missing from the set.
pub fn missing_rotations(tile_set: &TileSet) -> Vec<TileType> {
    let mut missing: Vec<TileType> = tile_set
        .tiles()
        .iter()
        .map(TileType::rotated)
        .filter(|r| !tile_set.contains(r))
        .collect();
    missing.dedup();
    missing
}

pub fn is_rotation_closed(tile_set: &TileSet) -> bool {
    missing_rotations(tile_set).is_empty()
}

/// Add every missing rotation.
pub fn rotation_closure(tile_set: &TileSet) -> TileSet {
    let mut tiles = tile_set.tiles().to_vec();
    tiles.extend(missing_rotations(tile_set));
    TileSet::new(tiles)
}

pub const SOURCE_NODE: &str = "source";
pub const TARGET_NODE: &str = "target";

fn layer_node(tile: usize, layer: usize) -> String {
    format!("({tile},{layer})")
}

/// Layered undirected graph: a source, `n` copies of the column-fitting tiles
/// and a target. Source edges go to the seed (or, without a seed, to every
/// white-topped tile) in the first copy.
pub fn tiles_to_graph(instance: &TilingInstance) -> Result<UndirectedGraph> {
    if instance.width != 1 {
        return Err(Error::Invalid("tiles_to_graph needs a width-one instance".into()));
    }
    let Height::Fixed(n) = instance.height else {
        return Err(Error::WrongHeightMode { expected: "fixed-height" });
    };
    let set = &instance.tile_set;
    let missing = missing_rotations(set);
    if !missing.is_empty() {
        return Err(Error::Invalid(format!(
            "tile set is not closed under rotation; missing {missing:?}"
        )));
    }
    let usable: Vec<(usize, &TileType)> = set
        .tiles()
        .iter()
        .enumerate()
        .filter(|(_, t)| fits_column(t))
        .collect();
    let mut nodes = vec![SOURCE_NODE.to_string(), TARGET_NODE.to_string()];
    let mut edges = Vec::new();
    for layer in 1..=n {
        for &(i, _) in &usable {
            nodes.push(layer_node(i, layer));
        }
    }
    for &(i, t) in &usable {
        let starts = match &instance.seed {
            Some(seed) => t == seed,
            None => true,
        };
        if starts && t.top.is_white() {
            edges.push((SOURCE_NODE.to_string(), layer_node(i, 1)));
        }
        if t.bottom.is_white() {
            edges.push((layer_node(i, n), TARGET_NODE.to_string()));
        }
    }
    for layer in 1..n {
        for &(i, a) in &usable {
            for &(j, b) in &usable {
                if a.bottom == b.top {
                    edges.push((layer_node(i, layer), layer_node(j, layer + 1)));
                }
            }
        }
    }
    UndirectedGraph::new(nodes, edges, SOURCE_NODE, TARGET_NODE)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(l: &str, u: &str, r: &str, d: &str) -> TileType {
        TileType::new(l, u, r, d)
    }

    fn graph(edges: &[(&str, &str)], s: &str, tgt: &str) -> DirectedGraph {
        DirectedGraph::new(
            Vec::new(),
            edges.iter().map(|(u, v)| (u.to_string(), v.to_string())),
            s,
            tgt,
        )
        .unwrap()
    }

    #[test]
    fn single_edge_reduction() {
        let g = graph(&[("s", "t")], "s", "t");
        let inst = graph_to_tiles(&g);
        assert_eq!(inst.tile_set.len(), 4);
        assert_eq!(inst.height, Height::Fixed(4));
        assert_eq!(
            inst.tile_set.tiles(),
            &[
                t("white", "white", "white", "s"),
                t("white", "s", "white", "s"),
                t("white", "t", "white", "white"),
                t("white", "s", "white", "t"),
            ]
        );
        assert!(solve_line(&inst.tile_set, inst.seed.as_ref().unwrap(), inst.height));
    }

    #[test]
    fn source_equals_target_without_edges() {
        let g = graph(&[], "s", "s");
        let inst = graph_to_tiles(&g);
        assert_eq!(inst.height, Height::Fixed(3));
        assert!(solve_line(&inst.tile_set, inst.seed.as_ref().unwrap(), inst.height));
    }

    #[test]
    fn seed_with_non_white_top_fails() {
        let seed = t("white", "a", "white", "white");
        let set = TileSet::new(vec![seed.clone()]);
        assert!(!solve_line(&set, &seed, Height::Fixed(1)));
        assert!(!solve_line(&set, &seed, Height::Arbitrary));
    }

    #[test]
    fn rotation_closure_checks() {
        let a = t("white", "a", "white", "b");
        let b = t("white", "b", "white", "a");
        assert!(is_rotation_closed(&TileSet::new(vec![a.clone(), b.clone()])));
        let lone = TileSet::new(vec![a.clone()]);
        assert!(!is_rotation_closed(&lone));
        assert_eq!(missing_rotations(&lone), vec![b]);
        assert!(is_rotation_closed(&rotation_closure(&lone)));
    }

    #[test]
    fn layered_graph_for_two_tile_set() {
        let a = t("white", "a", "white", "b");
        let b = t("white", "b", "white", "a");
        let inst = TilingInstance::fixed(TileSet::new(vec![a.clone(), b]), Some(a), 2, 1).unwrap();
        let g = tiles_to_graph(&inst).unwrap();
        assert_eq!(g.nodes().len(), 6);
        // the seed's top is not white, so the source is isolated
        assert!(!undirected_reachable(&g));
        assert!(g.edges().contains(&("(0,1)".to_string(), "(1,2)".to_string())));
    }

    #[test]
    fn empty_set_graph() {
        let inst = TilingInstance::fixed(TileSet::empty(), None, 3, 1).unwrap();
        let g = tiles_to_graph(&inst).unwrap();
        assert_eq!(g.nodes().len(), 2);
        assert!(!undirected_reachable(&g));
    }

    #[test]
    fn non_closed_sets_are_rejected() {
        let inst = TilingInstance::fixed(TileSet::new(vec![t("white", "a", "white", "b")]), None, 2, 1).unwrap();
        assert!(tiles_to_graph(&inst).is_err());
    }

    #[test]
    fn undirected_basics() {
        let g = UndirectedGraph::new(Vec::new(), vec![("s".into(), "t".into())], "s", "t").unwrap();
        assert!(undirected_reachable(&g));
        let g = UndirectedGraph::new(vec!["x".into()], vec![("t".into(), "x".into())], "s", "t").unwrap();
        assert!(!undirected_reachable(&g));
    }
}
