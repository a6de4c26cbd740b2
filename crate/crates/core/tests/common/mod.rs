#![allow(dead_code)]

use dynmon::{Graph, ThresholdProfile, Vertex};
use rand::Rng;

/// Erdős–Rényi graph; every pair independently with probability `p`.
pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Connected random graph: a random spanning tree plus extra edges.
pub fn connected<R: Rng>(n: usize, extra: f64, rng: &mut R) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(extra) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Fixed point by repeated sweeps over all vertices.
pub fn naive_hull(g: &Graph, phi: &ThresholdProfile, seed: &[Vertex]) -> Vec<bool> {
    let mut active = vec![false; g.n()];
    for &s in seed {
        active[s] = true;
    }
    loop {
        let mut changed = false;
        for u in 0..g.n() {
            if !active[u] && g.neighbors(u).iter().filter(|&&v| active[v]).count() >= phi.get(u) {
                active[u] = true;
                changed = true;
            }
        }
        if !changed {
            return active;
        }
    }
}

pub fn naive_is_monopoly(g: &Graph, phi: &ThresholdProfile, seed: &[Vertex]) -> bool {
    naive_hull(g, phi, seed).into_iter().all(|a| a)
}

/// Minimum monopoly size by scanning all 2^n subsets.
pub fn brute_min_monopoly(g: &Graph, phi: &ThresholdProfile) -> usize {
    let n = g.n();
    assert!(n <= 16);
    (0u32..1 << n)
        .filter_map(|mask| {
            let seed: Vec<Vertex> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            naive_is_monopoly(g, phi, &seed).then_some(seed.len())
        })
        .min()
        .unwrap()
}

/// Shortest cycle by enumerating every simple cycle (small graphs only).
pub fn brute_girth(g: &Graph) -> Option<usize> {
    fn extend(g: &Graph, start: Vertex, path: &mut Vec<Vertex>, on: &mut [bool], best: &mut Option<usize>) {
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if w == start && path.len() >= 3 {
                *best = Some(best.map_or(path.len(), |b| b.min(path.len())));
            } else if w > start && !on[w] {
                on[w] = true;
                path.push(w);
                extend(g, start, path, on, best);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut best = None;
    for s in 0..g.n() {
        let mut on = vec![false; g.n()];
        on[s] = true;
        extend(g, s, &mut vec![s], &mut on, &mut best);
    }
    best
}

pub fn double_star() -> Graph {
    Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap()
}

/// All permutations of `0..n` (lexicographic).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}
