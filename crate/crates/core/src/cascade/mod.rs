//! Threshold profiles and the activation hull.
//!
//! Given thresholds `phi`, the hull of a seed set `D` is the smallest
//! superset of `D` such that every vertex outside it has fewer than
//! `phi(u)` neighbours inside. `D` is a dynamic monopoly when its hull is
//! the whole vertex set.

mod rho;

pub use rho::{Rho, RhoError};

use std::collections::{BTreeMap, VecDeque};

use rand::Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CascadeError {
    #[error("threshold profile has length {got}, graph has {n} vertices")]
    LengthMismatch { got: usize, n: usize },
    #[error("threshold {phi} at vertex {vertex} exceeds its degree {degree}")]
    ThresholdAboveDegree { vertex: Vertex, phi: usize, degree: usize },
    #[error("graph has no edges, so 1/Δ is undefined")]
    NoEdges,
    #[error("seed vertex {vertex} out of range (n = {n})")]
    SeedOutOfRange { vertex: Vertex, n: usize },
}

/// Per-vertex activation thresholds with `phi(u) <= d(u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdProfile {
    phi: Vec<usize>,
}

impl ThresholdProfile {
    pub fn new(g: &Graph, phi: Vec<usize>) -> Result<Self, CascadeError> {
        if phi.len() != g.n() {
            return Err(CascadeError::LengthMismatch { got: phi.len(), n: g.n() });
        }
        for (u, &t) in phi.iter().enumerate() {
            if t > g.degree(u) {
                return Err(CascadeError::ThresholdAboveDegree { vertex: u, phi: t, degree: g.degree(u) });
            }
        }
        Ok(ThresholdProfile { phi })
    }

    #[inline]
    pub fn get(&self, u: Vertex) -> usize {
        self.phi[u]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.phi
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }
}

/// `phi(u) = ⌈ρ·d(u)⌉`, computed exactly.
pub fn proportional_thresholds(g: &Graph, rho: Rho) -> ThresholdProfile {
    ThresholdProfile { phi: (0..g.n()).map(|u| rho.ceil_times(g.degree(u))).collect() }
}

/// `max(ρ, 1/Δ)`, capped at 1. Every `ρ <= 1/Δ` induces the same
/// thresholds as `1/Δ`.
pub fn effective_rho(g: &Graph, rho: Rho) -> Result<Rho, CascadeError> {
    let delta = g.max_degree();
    if delta == 0 {
        return Err(CascadeError::NoEdges);
    }
    let floor = Rho::reciprocal(delta as u64).expect("Δ >= 1");
    Ok(rho.max(floor))
}

/// Outcome of a hull computation. `round[u]` is `Some(0)` for seeds,
/// `Some(r)` for a vertex activated in synchronous generation `r`, `None`
/// for vertices left inactive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeResult {
    round: Vec<Option<usize>>,
    active_count: usize,
}

impl CascadeResult {
    pub fn is_active(&self, u: Vertex) -> bool {
        self.round[u].is_some()
    }

    pub fn round(&self, u: Vertex) -> Option<usize> {
        self.round[u]
    }

    pub fn active(&self) -> Vec<Vertex> {
        (0..self.round.len()).filter(|&u| self.round[u].is_some()).collect()
    }

    pub fn active_mask(&self) -> Vec<bool> {
        self.round.iter().map(Option::is_some).collect()
    }

    pub fn active_count(&self) -> usize {
        self.active_count
    }

    pub fn is_monopoly(&self) -> bool {
        self.active_count == self.round.len()
    }

    /// Number of synchronous generations after the seed.
    pub fn generations(&self) -> usize {
        self.round.iter().flatten().copied().max().unwrap_or(0)
    }
}

impl Serialize for CascadeResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Record {
            active: Vec<Vertex>,
            rounds: BTreeMap<Vertex, usize>,
            is_monopoly: bool,
        }
        Record {
            active: self.active(),
            rounds: self.round.iter().enumerate().filter_map(|(u, r)| r.map(|r| (u, r))).collect(),
            is_monopoly: self.is_monopoly(),
        }
        .serialize(serializer)
    }
}

fn check_seed(n: usize, seed: &[Vertex]) -> Result<(), CascadeError> {
    match seed.iter().find(|&&v| v >= n) {
        Some(&vertex) => Err(CascadeError::SeedOutOfRange { vertex, n }),
        None => Ok(()),
    }
}

/// Hull of `seed` with synchronous activation rounds.
///
/// FIFO worklist seeded in ascending vertex order. Vertices leave the queue
/// in non-decreasing round order, so a vertex whose counter reaches its
/// threshold while its neighbour `v` is being processed belongs to
/// generation `round(v) + 1`. Zero-threshold vertices outside the seed join
/// at round 1.
pub fn hull(g: &Graph, phi: &ThresholdProfile, seed: &[Vertex]) -> Result<CascadeResult, CascadeError> {
    let n = g.n();
    check_seed(n, seed)?;
    let mut round: Vec<Option<usize>> = vec![None; n];
    let mut count = vec![0usize; n];
    let mut queue = VecDeque::new();

    let mut sorted = seed.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for &s in &sorted {
        round[s] = Some(0);
        queue.push_back(s);
    }
    for (u, r) in round.iter_mut().enumerate() {
        if r.is_none() && phi.get(u) == 0 {
            *r = Some(1);
            queue.push_back(u);
        }
    }
    let mut active_count = queue.len();

    while let Some(v) = queue.pop_front() {
        let r = round[v].expect("queued vertices are active");
        for &w in g.neighbors(v) {
            if round[w].is_some() {
                continue;
            }
            count[w] += 1;
            if count[w] >= phi.get(w) {
                round[w] = Some(r + 1);
                active_count += 1;
                queue.push_back(w);
            }
        }
    }

    Ok(CascadeResult { round, active_count })
}

pub fn is_monopoly(g: &Graph, phi: &ThresholdProfile, d: &[Vertex]) -> Result<bool, CascadeError> {
    Ok(hull(g, phi, d)?.is_monopoly())
}

/// Hull computed with a uniformly random choice of the next vertex to
/// propagate. Returns the active mask only; used to check that the closure
/// does not depend on processing order.
pub fn hull_random_order<R: Rng + ?Sized>(
    g: &Graph,
    phi: &ThresholdProfile,
    seed: &[Vertex],
    rng: &mut R,
) -> Result<Vec<bool>, CascadeError> {
    let n = g.n();
    check_seed(n, seed)?;
    let mut active = vec![false; n];
    let mut count = vec![0usize; n];
    let mut pending = Vec::new();
    for &s in seed {
        if !active[s] {
            active[s] = true;
            pending.push(s);
        }
    }
    for (u, a) in active.iter_mut().enumerate() {
        if !*a && phi.get(u) == 0 {
            *a = true;
            pending.push(u);
        }
    }
    while !pending.is_empty() {
        let i = rng.gen_range(0..pending.len());
        let v = pending.swap_remove(i);
        for &w in g.neighbors(v) {
            if active[w] {
                continue;
            }
            count[w] += 1;
            if count[w] >= phi.get(w) {
                active[w] = true;
                pending.push(w);
            }
        }
    }
    Ok(active)
}

/// Incrementally maintained hull: vertices can be added one at a time and
/// the closure is restored after each addition.
#[derive(Debug, Clone)]
pub struct HullState<'g> {
    g: &'g Graph,
    phi: &'g ThresholdProfile,
    active: Vec<bool>,
    count: Vec<usize>,
    size: usize,
    stack: Vec<Vertex>,
}

impl<'g> HullState<'g> {
    /// Hull of the empty set.
    pub fn new(g: &'g Graph, phi: &'g ThresholdProfile) -> Self {
        let n = g.n();
        let mut state = HullState { g, phi, active: vec![false; n], count: vec![0; n], size: 0, stack: Vec::new() };
        for u in 0..n {
            if phi.get(u) == 0 && !state.active[u] {
                state.activate(u);
            }
        }
        state.propagate();
        state
    }

    fn activate(&mut self, u: Vertex) {
        self.active[u] = true;
        self.size += 1;
        self.stack.push(u);
    }

    fn propagate(&mut self) {
        while let Some(v) = self.stack.pop() {
            for &w in self.g.neighbors(v) {
                if self.active[w] {
                    continue;
                }
                self.count[w] += 1;
                if self.count[w] >= self.phi.get(w) {
                    self.activate(w);
                }
            }
        }
    }

    /// Adds `u` and closes. Returns how many vertices became active.
    pub fn insert(&mut self, u: Vertex) -> usize {
        if self.active[u] {
            return 0;
        }
        let before = self.size;
        self.activate(u);
        self.propagate();
        self.size - before
    }

    pub fn extend<I: IntoIterator<Item = Vertex>>(&mut self, vs: I) -> usize {
        vs.into_iter().map(|v| self.insert(v)).sum()
    }

    #[inline]
    pub fn contains(&self, u: Vertex) -> bool {
        self.active[u]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_full(&self) -> bool {
        self.size == self.active.len()
    }

    pub fn mask(&self) -> &[bool] {
        &self.active
    }

    pub fn inactive(&self) -> Vec<Vertex> {
        (0..self.active.len()).filter(|&u| !self.active[u]).collect()
    }
}

/// Split of the vertices by degree: `v2` holds `d(u) >= 1/ρ`, `v1` the rest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreePartition {
    pub v1: Vec<Vertex>,
    pub v2: Vec<Vertex>,
}

impl DegreePartition {
    pub fn in_v2_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &u in &self.v2 {
            mask[u] = true;
        }
        mask
    }
}

pub fn degree_partition(g: &Graph, rho: Rho) -> DegreePartition {
    let (v2, v1) = (0..g.n()).partition(|&u| rho.degree_at_least_inverse(g.degree(u)));
    DegreePartition { v1, v2 }
}
