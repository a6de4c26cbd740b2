//! Randomised construction for connected graphs of girth at least five.
//!
//! A deterministic greedy set `X0` of high-degree vertices is chosen first.
//! Then rounds `i = 1, 2, …` sample `X_i` from `V \ H(X0)` with probability
//! `p1 = ρ/(1-δ)` per vertex and keep `Y_i = X_i \ H(Y_0 ∪ … ∪ Y_{i-1})`.
//! The seed is `X0 ∪ Y_1 ∪ …`.
//!
//! The size guarantee `(2+ε)ρn` only holds for `ρ` below the bound returned
//! by [`rho_bound_for`], which is far outside what fits in memory. The
//! procedure itself is well defined for any `ρ <= 1-δ`, so it accepts any
//! such pair and reports which of the theoretical constraints hold.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{ConstructError, Method, MonopolySeed, SeedParams};
use crate::cascade::{degree_partition, proportional_thresholds, HullState, Rho};
use crate::graph::{girth, Graph, Vertex};

pub const DEFAULT_DELTA: f64 = 0.5;

/// `(1+δ)² + (1+δ)/(1-δ)²`, required to be at most `2+ε`.
pub fn delta_budget(delta: f64) -> f64 {
    (1.0 + delta).powi(2) + (1.0 + delta) / (1.0 - delta).powi(2)
}

/// `1 - exp(-δ²/(2(1-δ)))`.
pub fn p2_for(delta: f64) -> f64 {
    -(-(delta * delta) / (2.0 * (1.0 - delta))).exp_m1()
}

/// Largest `ρ` for which the size guarantee is proven at this `δ`:
/// `δ/(1+δ) · p2 · 1/(8 ln(1/δ))`.
pub fn rho_bound_for(delta: f64) -> f64 {
    delta / (1.0 + delta) * p2_for(delta) / (8.0 * (1.0 / delta).ln())
}

/// Smallest `k >= 1` with `δ^k·n + 1/(1+δ) < 1`.
pub fn rounds_for(delta: f64, n: usize) -> usize {
    let slack = 1.0 - 1.0 / (1.0 + delta);
    let mut k = 1;
    let mut term = delta * n as f64;
    while term >= slack {
        k += 1;
        term *= delta;
    }
    k
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Theorem1Params {
    pub epsilon: f64,
    pub delta: f64,
    pub rho_max: f64,
    pub p2: f64,
}

impl Theorem1Params {
    pub fn p1(&self, rho: Rho) -> f64 {
        rho.to_f64() / (1.0 - self.delta)
    }

    pub fn default_rounds(&self, n: usize) -> usize {
        rounds_for(self.delta, n)
    }
}

/// `δ` is the largest value in `(0, 1/2]` with `(1+δ)² + (1+δ)/(1-δ)² <= 2+ε`
/// (the left side is increasing), found by bisection; `e^{-1/4} > 1/2`
/// so the first cap never binds.
pub fn theorem1_params(epsilon: f64) -> Result<Theorem1Params, ConstructError> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(ConstructError::InvalidEpsilon(epsilon));
    }
    let cap = (-0.25f64).exp().min(0.5);
    let target = 2.0 + epsilon;
    let delta = if delta_budget(cap) <= target {
        cap
    } else {
        let (mut lo, mut hi) = (0.0f64, cap);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if delta_budget(mid) <= target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    Ok(Theorem1Params { epsilon, delta, rho_max: rho_bound_for(delta), p2: p2_for(delta) })
}

fn check_delta(delta: f64) -> Result<(), ConstructError> {
    if delta > 0.0 && delta <= 0.5 {
        Ok(())
    } else {
        Err(ConstructError::InvalidDelta(delta))
    }
}

/// Greedy high-degree set: scan high-degree vertices in ascending id and
/// take `u` whenever more than `d(u)/(1+δ)` of its neighbours are
/// low-degree and outside the current hull.
///
/// That count never increases as the hull grows, so a vertex rejected once
/// stays rejected; one ascending pass yields the same set as repeatedly
/// taking the smallest qualifying id.
pub fn greedy_x0(g: &Graph, rho: Rho, delta: f64) -> Result<Vec<Vertex>, ConstructError> {
    check_delta(delta)?;
    let part = degree_partition(g, rho);
    if part.v2.is_empty() {
        return Err(ConstructError::NoHighDegreeVertex(rho));
    }
    let phi = proportional_thresholds(g, rho);
    let mut state = HullState::new(g, &phi);
    Ok(greedy_x0_with(g, rho, delta, &part.v2, &mut state))
}

fn greedy_x0_with(g: &Graph, rho: Rho, delta: f64, v2: &[Vertex], state: &mut HullState<'_>) -> Vec<Vertex> {
    let mut x0 = Vec::new();
    for &u in v2 {
        let low_outside =
            g.neighbors(u).iter().filter(|&&w| !rho.degree_at_least_inverse(g.degree(w)) && !state.contains(w)).count();
        if low_outside as f64 * (1.0 + delta) > g.degree(u) as f64 {
            x0.push(u);
            state.insert(u);
        }
    }
    x0
}

#[derive(Debug, Clone, Copy)]
pub struct Theorem1Options {
    pub delta: f64,
    pub epsilon: Option<f64>,
    pub rng_seed: u64,
    /// `None` uses [`rounds_for`].
    pub max_rounds: Option<usize>,
    pub max_restarts: usize,
    pub allow_low_girth: bool,
}

impl Default for Theorem1Options {
    fn default() -> Self {
        Theorem1Options {
            delta: DEFAULT_DELTA,
            epsilon: None,
            rng_seed: 0,
            max_rounds: None,
            max_restarts: 0,
            allow_low_girth: false,
        }
    }
}

/// Which of the theoretical side conditions hold for the `(ρ, δ, ε)` a run
/// used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstraintReport {
    pub delta_cap_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_epsilon_ok: Option<bool>,
    pub rho_max: f64,
    pub rho_below_max: bool,
    pub girth_at_least_5: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundRecord {
    pub round: usize,
    pub x: Vec<Vertex>,
    pub y: Vec<Vertex>,
    pub hull_size: usize,
    /// Among high-degree vertices outside `H(X0)`, the fraction outside
    /// `H(X0 ∪ X_i)`. `None` when there are no such vertices.
    pub high_miss_fraction: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem1Trace {
    pub x0: Vec<Vertex>,
    pub hull_after_x0: usize,
    pub rounds: Vec<RoundRecord>,
    pub fallback_used: bool,
    pub fallback_added: Vec<Vertex>,
    pub restarts: usize,
}

impl Theorem1Trace {
    /// One CSV line per round: `round,x_size,y_size,hull_size,high_miss_fraction`.
    pub fn to_table(&self) -> String {
        let mut out = String::from("round,x_size,y_size,hull_size,high_miss_fraction\n");
        out.push_str(&format!("0,{},{},{},\n", self.x0.len(), self.x0.len(), self.hull_after_x0));
        for r in &self.rounds {
            let miss = r.high_miss_fraction.map(|f| format!("{f:.6}")).unwrap_or_default();
            out.push_str(&format!("{},{},{},{},{}\n", r.round, r.x.len(), r.y.len(), r.hull_size, miss));
        }
        out
    }

    /// The seed this trace describes.
    pub fn seed(&self) -> Vec<Vertex> {
        let mut seed = self.x0.clone();
        for r in &self.rounds {
            seed.extend_from_slice(&r.y);
        }
        seed.extend_from_slice(&self.fallback_added);
        seed.sort_unstable();
        seed
    }
}

/// One pass of the random-round procedure with its own RNG stream.
fn single_run(
    p1: f64,
    x0: &[Vertex],
    base: &HullState<'_>,
    v2: &[Vertex],
    rng: &mut ChaCha8Rng,
    max_rounds: usize,
) -> Theorem1Trace {
    let pool: Vec<Vertex> = base.inactive();
    let high_outside: Vec<Vertex> = v2.iter().copied().filter(|&u| !base.contains(u)).collect();
    let mut state = base.clone();
    let mut rounds = Vec::new();

    let mut i = 0;
    while !state.is_full() && i < max_rounds {
        i += 1;
        let x: Vec<Vertex> = pool.iter().copied().filter(|_| rng.gen_bool(p1)).collect();
        let y: Vec<Vertex> = x.iter().copied().filter(|&v| !state.contains(v)).collect();

        let high_miss_fraction = (!high_outside.is_empty()).then(|| {
            let mut own = base.clone();
            own.extend(x.iter().copied());
            let missed = high_outside.iter().filter(|&&u| !own.contains(u)).count();
            missed as f64 / high_outside.len() as f64
        });

        state.extend(y.iter().copied());
        rounds.push(RoundRecord { round: i, x, y, hull_size: state.size(), high_miss_fraction });
    }

    let fallback_added = state.inactive();
    Theorem1Trace {
        x0: x0.to_vec(),
        hull_after_x0: base.size(),
        rounds,
        fallback_used: !fallback_added.is_empty(),
        fallback_added,
        restarts: 0,
    }
}

/// Runs the construction. With `max_restarts > 0`, a run whose seed exceeds
/// `(1+δ)·((1+δ) + 1/(1-δ)²)·ρn` is repeated on a fresh RNG stream, up to
/// `max_restarts` times; the smallest seed seen is returned.
pub fn theorem1_construct(g: &Graph, rho: Rho, opts: Theorem1Options) -> Result<MonopolySeed, ConstructError> {
    let delta = opts.delta;
    check_delta(delta)?;
    if let Some(eps) = opts.epsilon {
        if eps.is_nan() || eps <= 0.0 {
            return Err(ConstructError::InvalidEpsilon(eps));
        }
    }
    if g.n() == 0 {
        return Err(ConstructError::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(ConstructError::Disconnected);
    }
    let part = degree_partition(g, rho);
    if part.v2.is_empty() {
        return Err(ConstructError::NoHighDegreeVertex(rho));
    }
    let gi = girth(g);
    if !gi.at_least(5) && !opts.allow_low_girth {
        return Err(ConstructError::GirthTooSmall(gi));
    }
    let p1 = rho.to_f64() / (1.0 - delta);
    if p1 > 1.0 {
        return Err(ConstructError::ProbabilityAboveOne(p1));
    }

    let n = g.n();
    let max_rounds = opts.max_rounds.unwrap_or_else(|| rounds_for(delta, n));
    let phi = proportional_thresholds(g, rho);
    let mut base = HullState::new(g, &phi);
    let x0 = greedy_x0_with(g, rho, delta, &part.v2, &mut base);

    let target = (1.0 + delta) * ((1.0 + delta) + 1.0 / (1.0 - delta).powi(2)) * rho.to_f64() * n as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.rng_seed);
    let mut best: Option<Theorem1Trace> = None;
    let mut restarts = 0;
    for attempt in 0..=opts.max_restarts {
        restarts = attempt;
        rng.set_stream(attempt as u64);
        rng.set_word_pos(0);
        let trace = single_run(p1, &x0, &base, &part.v2, &mut rng, max_rounds);
        let size = trace.seed().len();
        if best.as_ref().is_none_or(|b| size < b.seed().len()) {
            best = Some(trace);
        }
        if size as f64 <= target {
            break;
        }
    }
    let mut trace = best.expect("at least one run");
    trace.restarts = restarts;

    let constraints = ConstraintReport {
        delta_cap_ok: delta <= (-0.25f64).exp().min(0.5),
        delta_epsilon_ok: opts.epsilon.map(|eps| delta_budget(delta) <= 2.0 + eps),
        rho_max: rho_bound_for(delta),
        rho_below_max: rho.to_f64() < rho_bound_for(delta),
        girth_at_least_5: gi.at_least(5),
    };
    let params = SeedParams {
        rho: Some(rho),
        rng_seed: Some(opts.rng_seed),
        delta: Some(delta),
        epsilon: opts.epsilon,
        p1: Some(p1),
        p2: Some(p2_for(delta)),
        max_rounds: Some(max_rounds),
        rounds: Some(trace.rounds.len()),
        fallback: Some(trace.fallback_used),
        max_restarts: Some(opts.max_restarts),
        restarts: Some(restarts),
        allow_low_girth: Some(opts.allow_low_girth),
        depth: None,
        constraints: Some(constraints),
    };
    let seed = trace.seed();
    MonopolySeed::verified(g, &phi, Method::Girth5, seed, params, Some(trace))
}
