//! Seed-set constructions. Every constructor verifies its output with an
//! independent hull computation before returning it.

mod abw;
mod theorem1;
mod tree;
mod v2;

pub use abw::{abw_construct, abw_seed_from_order};
pub use theorem1::{
    delta_budget, greedy_x0, p2_for, rho_bound_for, rounds_for, theorem1_construct, theorem1_params, ConstraintReport,
    RoundRecord, Theorem1Options, Theorem1Params, Theorem1Trace, DEFAULT_DELTA,
};
pub use tree::tree_construct;
pub use v2::v2_baseline;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cascade::{hull, CascadeError, Rho, ThresholdProfile};
use crate::graph::{Girth, Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is empty")]
    EmptyGraph,
    #[error("graph is not a tree")]
    NotATree,
    #[error("tree order {n} is below 1/rho for rho = {rho}")]
    OrderTooSmall { n: usize, rho: Rho },
    #[error("no vertex has degree at least 1/rho for rho = {0} (maximum degree too small)")]
    NoHighDegreeVertex(Rho),
    #[error("girth {0} is below 5 (pass allow_low_girth to override)")]
    GirthTooSmall(Girth),
    #[error("delta must lie in (0, 1/2], got {0}")]
    InvalidDelta(f64),
    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(f64),
    #[error("sampling probability rho/(1-delta) = {0} exceeds 1")]
    ProbabilityAboveOne(f64),
    #[error(transparent)]
    Cascade(#[from] CascadeError),
    #[error("constructed set failed hull verification")]
    VerificationFailed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Abw,
    Girth5,
    Tree,
    V2,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Abw, Method::Girth5, Method::Tree, Method::V2];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Abw => "abw",
            Method::Girth5 => "girth5",
            Method::Tree => "tree",
            Method::V2 => "v2",
        }
    }

    /// Whether the output depends on an RNG seed.
    pub fn is_randomized(self) -> bool {
        matches!(self, Method::Abw | Method::Girth5)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown method {s:?} (expected abw, girth5, tree or v2)"))
    }
}

/// Parameters a construction ran with. Fields that do not apply to a
/// method are left out of the serialized record.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SeedParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<Rho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng_seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_rounds: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rounds: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fallback: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_restarts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub allow_low_girth: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constraints: Option<ConstraintReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonopolySeed {
    pub method: Method,
    pub params: SeedParams,
    pub seed: Vec<Vertex>,
    pub size: usize,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Theorem1Trace>,
}

impl MonopolySeed {
    /// Sorts the seed and checks it with a fresh hull computation.
    fn verified(
        g: &Graph,
        phi: &ThresholdProfile,
        method: Method,
        mut seed: Vec<Vertex>,
        params: SeedParams,
        trace: Option<Theorem1Trace>,
    ) -> Result<Self, ConstructError> {
        seed.sort_unstable();
        seed.dedup();
        if !hull(g, phi, &seed)?.is_monopoly() {
            return Err(ConstructError::VerificationFailed);
        }
        Ok(MonopolySeed { method, params, size: seed.len(), seed, verified: true, trace })
    }
}
