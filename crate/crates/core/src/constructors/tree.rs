use super::{ConstructError, Method, MonopolySeed, SeedParams};
use crate::cascade::{degree_partition, proportional_thresholds, Rho};
use crate::graph::{Graph, Vertex};

/// A vertex `u` of the current tree and the unique component of `T - u`
/// that still contains high-degree vertices.
struct Split {
    u: Vertex,
    component: Vec<Vertex>,
}

/// Picks `u` in `v2` maximising the order of the largest component of
/// `T - u` that meets `v2` (smallest id on ties).
fn choose_split(t: &Graph, in_v2: &[bool]) -> Split {
    let n = t.n();
    // root at 0, BFS order
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    seen[0] = true;
    order.push(0);
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &w in t.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                order.push(w);
            }
        }
    }
    let mut size = vec![1usize; n];
    let mut high = in_v2.iter().map(|&b| usize::from(b)).collect::<Vec<_>>();
    for &v in order.iter().rev() {
        if parent[v] != usize::MAX {
            size[parent[v]] += size[v];
            high[parent[v]] += high[v];
        }
    }
    let total_high = high[0];

    // For each candidate: (order of the largest v2-meeting component, the
    // neighbour of u inside that component).
    let mut best: Option<(usize, Vertex, Vertex)> = None;
    for u in (0..n).filter(|&u| in_v2[u]) {
        let mut local: Option<(usize, Vertex)> = None;
        for &w in t.neighbors(u) {
            let (sz, hi) = if parent[w] == u { (size[w], high[w]) } else { (n - size[u], total_high - high[u]) };
            if hi > 0 && local.is_none_or(|(s, _)| sz > s) {
                local = Some((sz, w));
            }
        }
        if let Some((sz, w)) = local {
            if best.is_none_or(|(s, _, _)| sz > s) {
                best = Some((sz, u, w));
            }
        }
    }
    let (_, u, entry) = best.expect("at least two v2 vertices");

    let mut component = vec![entry];
    let mut mark = vec![false; n];
    mark[u] = true;
    mark[entry] = true;
    let mut i = 0;
    while i < component.len() {
        let v = component[i];
        i += 1;
        for &w in t.neighbors(v) {
            if !mark[w] {
                mark[w] = true;
                component.push(w);
            }
        }
    }
    debug_assert!(
        (0..n).filter(|&v| in_v2[v] && v != u).all(|v| mark[v]),
        "the chosen component holds every other v2 vertex"
    );
    Split { u, component }
}

/// Recursive tree construction with `|seed| <= ⌊ρ·n⌋`.
///
/// With at most one high-degree vertex the answer is that vertex (or one
/// maximum-degree vertex when there are none). Otherwise split off the
/// vertex `u` whose removal leaves the largest possible component `K` with
/// high-degree vertices, solve `K` with its own degrees, and add `u`:
/// everything outside `K` other than `u` has threshold 1 and is reached
/// from `u`, and `K`'s neighbour of `u` needs at most one more active
/// neighbour in `T` than in `K`.
pub fn tree_construct(t: &Graph, rho: Rho) -> Result<MonopolySeed, ConstructError> {
    if !t.is_tree() {
        return Err(ConstructError::NotATree);
    }
    if !rho.degree_at_least_inverse(t.n()) {
        return Err(ConstructError::OrderTooSmall { n: t.n(), rho });
    }

    let mut seed = Vec::new();
    let mut depth = 0;
    // current subtree and its vertex ids in `t`
    let mut current = t.clone();
    let mut ids: Vec<Vertex> = (0..t.n()).collect();
    loop {
        depth += 1;
        debug_assert!(rho.degree_at_least_inverse(current.n()));
        let part = degree_partition(&current, rho);
        match part.v2.len() {
            0 => {
                let max_deg = current.max_degree();
                let u = (0..current.n()).find(|&u| current.degree(u) == max_deg).expect("nonempty");
                seed.push(ids[u]);
                break;
            }
            1 => {
                seed.push(ids[part.v2[0]]);
                break;
            }
            _ => {
                let split = choose_split(&current, &part.in_v2_mask(current.n()));
                seed.push(ids[split.u]);
                let (sub, map) = current.induced_subgraph(&split.component).expect("ids in range");
                ids = map.into_iter().map(|v| ids[v]).collect();
                current = sub;
            }
        }
    }

    let phi = proportional_thresholds(t, rho);
    let params = SeedParams { rho: Some(rho), depth: Some(depth), ..Default::default() };
    MonopolySeed::verified(t, &phi, Method::Tree, seed, params, None)
}
