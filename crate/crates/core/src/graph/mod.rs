//! Simple undirected graphs with sorted adjacency lists.
//!
//! A [`Graph`] is immutable once built. Vertex ids are `0..n`, adjacency
//! lists are sorted ascending and symmetric, and there are no loops or
//! parallel edges.

mod girth;
mod parse;

pub use girth::{girth, Girth};
pub use parse::{parse_graph, ParseError};

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph from an edge list. Loops, duplicates and out-of-range
    /// endpoints are rejected rather than repaired.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(Graph { adj, m })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, u: Vertex) -> &[Vertex] {
        &self.adj[u]
    }

    #[inline]
    pub fn degree(&self, u: Vertex) -> usize {
        self.adj[u].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Maximum degree; 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v` in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Edge-list text: header `n m`, then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.m);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Connected components, each sorted ascending, ordered by their
    /// smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut blocks = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut block = Vec::new();
            while let Some(u) = queue.pop_front() {
                block.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        blocks
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.m + 1 == self.n() && self.is_connected()
    }

    /// Subgraph induced by `keep`, relabelled to `0..keep.len()` in
    /// ascending order of the original ids. The second value maps each new
    /// id back to its original id.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> Result<(Graph, Vec<Vertex>), GraphError> {
        let n = self.n();
        let mut old_ids: Vec<Vertex> = keep.to_vec();
        old_ids.sort_unstable();
        old_ids.dedup();
        if let Some(&bad) = old_ids.iter().find(|&&v| v >= n) {
            return Err(GraphError::VertexOutOfRange { vertex: bad, n });
        }
        let mut new_id = vec![usize::MAX; n];
        for (i, &v) in old_ids.iter().enumerate() {
            new_id[v] = i;
        }
        let mut m = 0;
        let adj: Vec<Vec<Vertex>> = old_ids
            .iter()
            .map(|&v| {
                let list: Vec<Vertex> =
                    self.adj[v].iter().filter_map(|&w| (new_id[w] != usize::MAX).then_some(new_id[w])).collect();
                m += list.len();
                list
            })
            .collect();
        Ok((Graph { adj, m: m / 2 }, old_ids))
    }

    /// Graph with vertex `u`'s edges removed, ids unchanged.
    pub fn without_vertex_edges(&self, u: Vertex) -> Graph {
        let adj: Vec<Vec<Vertex>> = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, list)| if v == u { Vec::new() } else { list.iter().copied().filter(|&w| w != u).collect() })
            .collect();
        Graph { m: self.m - self.degree(u), adj }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges=[", self.n(), self.m)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}
