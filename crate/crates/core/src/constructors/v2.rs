use super::{ConstructError, Method, MonopolySeed, SeedParams};
use crate::cascade::{degree_partition, proportional_thresholds, Rho};
use crate::graph::Graph;

/// All vertices of degree at least `1/ρ`, or vertex 0 when there are none.
/// On a connected graph every other vertex has threshold 1, so the cascade
/// floods outward from the seed.
pub fn v2_baseline(g: &Graph, rho: Rho) -> Result<MonopolySeed, ConstructError> {
    if g.n() == 0 {
        return Err(ConstructError::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(ConstructError::Disconnected);
    }
    let v2 = degree_partition(g, rho).v2;
    let seed = if v2.is_empty() { vec![0] } else { v2 };
    let phi = proportional_thresholds(g, rho);
    let params = SeedParams { rho: Some(rho), ..Default::default() };
    MonopolySeed::verified(g, &phi, Method::V2, seed, params, None)
}
