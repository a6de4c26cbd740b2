//! Instance families: stars, paths, cycles, complete graphs, the Petersen
//! graph, uniform random labelled trees and random graphs of girth >= 5.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratorError {
    #[error("{family} needs n >= {min}, got {n}")]
    TooSmall { family: Family, n: usize, min: usize },
    #[error("edge probability must lie in (0, 1), got {0}")]
    BadProbability(f64),
    #[error("random_girth5 needs an edge probability p")]
    MissingProbability,
    #[error("Prüfer entry {entry} out of range for {n} vertices")]
    BadPrufer { entry: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Star,
    Path,
    Cycle,
    Complete,
    Petersen,
    RandomTree,
    RandomGirth5,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Star => "star",
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Petersen => "petersen",
            Family::RandomTree => "random_tree",
            Family::RandomGirth5 => "random_girth5",
        }
    }

    pub fn is_random(self) -> bool {
        matches!(self, Family::RandomTree | Family::RandomGirth5)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            Family::Star,
            Family::Path,
            Family::Cycle,
            Family::Complete,
            Family::Petersen,
            Family::RandomTree,
            Family::RandomGirth5,
        ]
        .into_iter()
        .find(|f| f.as_str() == s)
        .ok_or_else(|| format!("unknown family {s:?}"))
    }
}

/// For `star`, `n` is the number of leaves; for every other family it is
/// the vertex count. `petersen` ignores `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default)]
    pub rng_seed: u64,
}

fn default_n() -> usize {
    10
}

impl GeneratorSpec {
    pub fn new(family: Family, n: usize) -> Self {
        GeneratorSpec { family, n, p: None, rng_seed: 0 }
    }

    pub fn random_tree(n: usize, rng_seed: u64) -> Self {
        GeneratorSpec { family: Family::RandomTree, n, p: None, rng_seed }
    }

    pub fn random_girth5(n: usize, p: f64, rng_seed: u64) -> Self {
        GeneratorSpec { family: Family::RandomGirth5, n, p: Some(p), rng_seed }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph, GeneratorError> {
    let n = spec.n;
    let need = |min: usize| {
        if n < min {
            Err(GeneratorError::TooSmall { family: spec.family, n, min })
        } else {
            Ok(())
        }
    };
    match spec.family {
        Family::Star => {
            need(1)?;
            Ok(star(n))
        }
        Family::Path => {
            need(1)?;
            Ok(path(n))
        }
        Family::Cycle => {
            need(3)?;
            Ok(cycle(n))
        }
        Family::Complete => {
            need(1)?;
            Ok(complete(n))
        }
        Family::Petersen => Ok(petersen()),
        Family::RandomTree => {
            need(1)?;
            Ok(random_tree(n, &mut ChaCha8Rng::seed_from_u64(spec.rng_seed)))
        }
        Family::RandomGirth5 => {
            need(1)?;
            let p = spec.p.ok_or(GeneratorError::MissingProbability)?;
            if !(p > 0.0 && p < 1.0) {
                return Err(GeneratorError::BadProbability(p));
            }
            Ok(random_girth5(n, p, &mut ChaCha8Rng::seed_from_u64(spec.rng_seed)))
        }
    }
}

/// `K_{1,k}` with center 0.
pub fn star(k: usize) -> Graph {
    Graph::from_edges(k + 1, (1..=k).map(|i| (0, i))).expect("valid star")
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid clique")
}

/// Outer 5-cycle `0..5`, spokes `i — i+5`, inner pentagram on `5..10`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("valid Petersen graph")
}

/// Decodes a Prüfer sequence of length `n - 2` into a labelled tree on `n`
/// vertices. Vertex `v` ends up with degree `1 + (occurrences of v)`.
pub fn prufer_decode(seq: &[Vertex]) -> Result<Graph, GeneratorError> {
    let n = seq.len() + 2;
    if let Some(&entry) = seq.iter().find(|&&a| a >= n) {
        return Err(GeneratorError::BadPrufer { entry, n });
    }
    let mut degree = vec![1usize; n];
    for &a in seq {
        degree[a] += 1;
    }
    // linear-time decoding: `ptr` scans for the next leaf, `leaf` is the
    // current smallest leaf
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = (0..n).find(|&v| degree[v] == 1).expect("a tree has leaves");
    let mut leaf = ptr;
    for &a in seq {
        edges.push((leaf, a));
        degree[leaf] -= 1;
        degree[a] -= 1;
        if degree[a] == 1 && a < ptr {
            leaf = a;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Ok(Graph::from_edges(n, edges).expect("Prüfer decoding yields a simple tree"))
}

pub fn random_prufer<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Vertex> {
    (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect()
}

/// Uniformly random labelled tree on `n >= 1` vertices.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    match n {
        0 => Graph::empty(0),
        1 => Graph::empty(1),
        _ => prufer_decode(&random_prufer(n, rng)).expect("entries drawn in range"),
    }
}

/// Does edge `uv` lie on a cycle of length 3 or 4?
fn on_short_cycle(adj: &[Vec<Vertex>], u: Vertex, v: Vertex) -> bool {
    let nu = &adj[u];
    let nv = &adj[v];
    // triangle
    if nu.iter().any(|w| *w != v && nv.binary_search(w).is_ok()) {
        return true;
    }
    // u - a - b - v
    nu.iter().filter(|&&a| a != v).any(|&a| adj[a].iter().any(|&b| b != u && b != v && nv.binary_search(&b).is_ok()))
}

fn remove_sorted(list: &mut Vec<Vertex>, x: Vertex) {
    if let Ok(i) = list.binary_search(&x) {
        list.remove(i);
    }
}

/// `G(n, p)`, then delete the lexicographically smallest edge on a 3- or
/// 4-cycle until none is left, then keep the largest component (the one
/// with the smallest vertex on ties), relabelled in ascending order.
///
/// Deleting edges never creates short cycles, so an edge that is clean
/// once stays clean and a single ascending pass over the edges suffices.
pub fn random_girth5<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    for &(u, v) in &edges {
        if on_short_cycle(&adj, u, v) {
            remove_sorted(&mut adj[u], v);
            remove_sorted(&mut adj[v], u);
        }
    }
    let kept = (0..n).flat_map(|u| adj[u].iter().filter(move |&&v| v > u).map(move |&v| (u, v)));
    let g = Graph::from_edges(n, kept.collect::<Vec<_>>()).expect("subgraph of a simple graph");

    let components = g.connected_components();
    let largest = components
        .iter()
        .fold(None::<&Vec<Vertex>>, |best, c| match best {
            Some(b) if b.len() >= c.len() => Some(b),
            _ => Some(c),
        })
        .cloned()
        .unwrap_or_default();
    g.induced_subgraph(&largest).expect("component ids in range").0
}

/// Canonical string of a tree rooted at `root` (AHU encoding).
fn rooted_code(t: &Graph, root: Vertex, parent: Option<Vertex>) -> String {
    let mut children: Vec<String> =
        t.neighbors(root).iter().filter(|&&w| Some(w) != parent).map(|&w| rooted_code(t, w, Some(root))).collect();
    children.sort_unstable();
    format!("({})", children.concat())
}

/// Isomorphism-invariant code for a tree: the smallest rooted code over
/// its one or two centres.
pub fn tree_code(t: &Graph) -> String {
    let n = t.n();
    if n == 0 {
        return String::new();
    }
    let mut degree = t.degrees();
    let mut removed = vec![false; n];
    let mut layer: Vec<Vertex> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        let mut next = Vec::new();
        for &v in &layer {
            removed[v] = true;
            left -= 1;
            for &w in t.neighbors(v) {
                if !removed[w] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    (0..n).filter(|&v| !removed[v]).map(|c| rooted_code(t, c, None)).min().expect("a tree has a centre")
}

/// One representative of every isomorphism class of trees on `n` vertices,
/// built by attaching a leaf to every vertex of every tree on `n - 1`
/// vertices.
pub fn nonisomorphic_trees(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut trees = vec![Graph::empty(1)];
    for size in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &trees {
            for v in 0..t.n() {
                let edges: Vec<_> = t.edges().chain(std::iter::once((v, size - 1))).collect();
                let grown = Graph::from_edges(size, edges).expect("adding a leaf keeps a tree");
                if seen.insert(tree_code(&grown)) {
                    next.push(grown);
                }
            }
        }
        trees = next;
    }
    trees
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{girth, Girth};

    #[test]
    fn star_degrees() {
        let g = generate(&GeneratorSpec::new(Family::Star, 4)).unwrap();
        assert_eq!(g.degrees(), vec![4, 1, 1, 1, 1]);
    }

    #[test]
    fn petersen_shape() {
        let g = generate(&GeneratorSpec::new(Family::Petersen, 0)).unwrap();
        assert_eq!((g.n(), g.m()), (10, 15));
        assert!(g.degrees().iter().all(|&d| d == 3));
        assert_eq!(girth(&g), Girth::Finite(5));
    }

    #[test]
    fn random_tree_is_tree() {
        let g = generate(&GeneratorSpec::random_tree(9, 7)).unwrap();
        assert!(g.is_tree());
        assert_eq!((g.n(), g.m()), (9, 8));
        assert_eq!(g, generate(&GeneratorSpec::random_tree(9, 7)).unwrap());
    }

    #[test]
    fn prufer_known_decoding() {
        // classic example: 3 3 3 4 on six vertices
        let g = prufer_decode(&[3, 3, 3, 4]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 3), (1, 3), (2, 3), (3, 4), (4, 5)]);
        assert!(prufer_decode(&[]).unwrap().has_edge(0, 1));
        assert!(prufer_decode(&[5]).is_err());
    }

    #[test]
    fn prufer_degrees_match_occurrences() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..40 {
            let seq = random_prufer(n, &mut rng);
            let g = prufer_decode(&seq).unwrap();
            assert!(g.is_tree());
            for v in 0..n {
                assert_eq!(g.degree(v), 1 + seq.iter().filter(|&&a| a == v).count());
            }
        }
    }

    #[test]
    fn girth5_output() {
        for seed in 0..10 {
            let g = generate(&GeneratorSpec::random_girth5(80, 0.08, seed)).unwrap();
            assert!(girth(&g).at_least(5));
            assert!(g.is_connected());
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(generate(&GeneratorSpec::new(Family::Cycle, 2)).is_err());
        assert!(generate(&GeneratorSpec::new(Family::Path, 0)).is_err());
        assert!(generate(&GeneratorSpec::random_girth5(10, 1.5, 0)).is_err());
        assert_eq!(generate(&GeneratorSpec::new(Family::RandomGirth5, 10)), Err(GeneratorError::MissingProbability));
    }

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| nonisomorphic_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
    }

    #[test]
    fn tree_code_is_label_invariant() {
        let a = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let b = Graph::from_edges(5, [(4, 2), (2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(tree_code(&a), tree_code(&b));
        let star = star(4);
        assert_ne!(tree_code(&a), tree_code(&star));
    }

    #[test]
    fn family_serde_names() {
        let spec: GeneratorSpec =
            serde_json::from_str(r#"{"family":"random_girth5","n":50,"p":0.1,"rng_seed":3}"#).unwrap();
        assert_eq!(spec, GeneratorSpec::random_girth5(50, 0.1, 3));
        assert_eq!("random_tree".parse::<Family>().unwrap(), Family::RandomTree);
    }
}
