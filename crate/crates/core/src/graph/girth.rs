use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Graph;

/// Length of a shortest cycle, or `Acyclic` for forests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Girth {
    Finite(usize),
    Acyclic,
}

impl Girth {
    /// True when every cycle (if any) has length at least `k`.
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= k,
            Girth::Acyclic => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Acyclic => write!(f, "acyclic"),
        }
    }
}

/// BFS from every vertex. A non-tree edge `uv` met during the search from
/// `r` closes a closed walk of length `dist[u] + dist[v] + 1` through `r`;
/// the minimum over all roots is the girth. O(n·m).
pub fn girth(g: &Graph) -> Girth {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    let mut touched = Vec::new();

    for root in 0..n {
        dist[root] = 0;
        touched.push(root);
        queue.push_back(root);
        'bfs: while let Some(u) = queue.pop_front() {
            // nothing shorter can be found from this level on
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &v in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    touched.push(v);
                    queue.push_back(v);
                } else if parent[u] != v {
                    best = best.min(dist[u] + dist[v] + 1);
                    if best == 3 {
                        break 'bfs;
                    }
                }
            }
        }
        queue.clear();
        for v in touched.drain(..) {
            dist[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
        if best == 3 {
            break;
        }
    }

    if best == usize::MAX {
        Girth::Acyclic
    } else {
        Girth::Finite(best)
    }
}
