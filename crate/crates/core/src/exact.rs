//! Exhaustive minimum monopoly search and the permutation upper bound.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::cascade::{hull, ThresholdProfile};
use crate::graph::{Graph, Vertex};

pub const DEFAULT_LIMIT: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("graph has {n} vertices, above the exhaustive-search limit {limit} (use force to override)")]
    TooLarge { n: usize, limit: usize },
    #[error("threshold profile has length {got}, graph has {n} vertices")]
    ProfileMismatch { got: usize, n: usize },
}

#[derive(Debug, Clone, Copy)]
pub struct ExactOptions {
    pub limit: usize,
    pub force: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions { limit: DEFAULT_LIMIT, force: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactResult {
    pub h: usize,
    pub witness: Vec<Vertex>,
    pub nodes_explored: u64,
}

/// Hull test on bitsets, for graphs with at most 64 vertices.
struct MaskHull {
    nbr: Vec<u64>,
    phi: Vec<u32>,
    full: u64,
}

impl MaskHull {
    fn new(g: &Graph, phi: &ThresholdProfile) -> Self {
        let n = g.n();
        let nbr = (0..n).map(|u| g.neighbors(u).iter().fold(0u64, |acc, &v| acc | (1 << v))).collect();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        MaskHull { nbr, phi: phi.as_slice().iter().map(|&t| t as u32).collect(), full }
    }

    fn is_monopoly(&self, mut set: u64) -> bool {
        loop {
            let mut grown = set;
            let mut rest = self.full & !set;
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if (self.nbr[u] & grown).count_ones() >= self.phi[u] {
                    grown |= 1 << u;
                }
            }
            if grown == self.full {
                return true;
            }
            if grown == set {
                return false;
            }
            set = grown;
        }
    }
}

/// Advances `idx` to the next `k`-combination of `0..n` in lexicographic
/// order. Returns false after the last one.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Smallest monopoly by exhaustive search: all subsets of size 0, 1, 2, …
/// in lexicographic order, each tested with a hull computation. The first
/// hit is minimum because every smaller cardinality was exhausted first.
pub fn min_monopoly_exact(g: &Graph, phi: &ThresholdProfile, opts: ExactOptions) -> Result<ExactResult, ExactError> {
    let n = g.n();
    if phi.len() != n {
        return Err(ExactError::ProfileMismatch { got: phi.len(), n });
    }
    if n > opts.limit && !opts.force {
        return Err(ExactError::TooLarge { n, limit: opts.limit });
    }

    let mask = (n <= 64).then(|| MaskHull::new(g, phi));
    let test = |idx: &[usize]| -> bool {
        match &mask {
            Some(m) => m.is_monopoly(idx.iter().fold(0u64, |acc, &v| acc | (1 << v))),
            None => hull(g, phi, idx).expect("ids in range").is_monopoly(),
        }
    };

    let mut nodes_explored = 0u64;
    for k in 0..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            nodes_explored += 1;
            if test(&idx) {
                return Ok(ExactResult { h: k, witness: idx, nodes_explored });
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    unreachable!("the full vertex set is always a monopoly")
}

/// `Σ phi(u) / (d(u) + 1)` as an exact rational.
pub fn abw_bound(g: &Graph, phi: &ThresholdProfile) -> BigRational {
    (0..g.n()).fold(BigRational::zero(), |acc, u| {
        acc + BigRational::new(BigInt::from(phi.get(u)), BigInt::from(g.degree(u) + 1))
    })
}
