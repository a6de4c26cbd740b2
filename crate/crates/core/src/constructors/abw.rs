use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{ConstructError, Method, MonopolySeed, SeedParams};
use crate::cascade::ThresholdProfile;
use crate::graph::{Graph, Vertex};

/// Seed rule for a fixed vertex order (`order[i]` is the vertex at position
/// `i`): keep every `u` with fewer than `phi(u)` neighbours placed after it.
///
/// The rest of the vertices can be activated from last to first position,
/// since each of them has at least `phi(u)` later neighbours, all of which
/// are either seeds or were activated before it.
pub fn abw_seed_from_order(g: &Graph, phi: &ThresholdProfile, order: &[Vertex]) -> Vec<Vertex> {
    let mut pos = vec![0usize; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut seed: Vec<Vertex> = (0..g.n())
        .filter(|&u| {
            let later = g.neighbors(u).iter().filter(|&&v| pos[v] > pos[u]).count();
            later < phi.get(u)
        })
        .collect();
    seed.sort_unstable();
    seed
}

/// Random-permutation construction. The expected seed size equals
/// `Σ phi(u)/(d(u)+1)`.
pub fn abw_construct(g: &Graph, phi: &ThresholdProfile, rng_seed: u64) -> Result<MonopolySeed, ConstructError> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut order: Vec<Vertex> = (0..g.n()).collect();
    order.shuffle(&mut rng);
    let seed = abw_seed_from_order(g, phi, &order);
    let params = SeedParams { rng_seed: Some(rng_seed), ..Default::default() };
    MonopolySeed::verified(g, phi, Method::Abw, seed, params, None)
}
