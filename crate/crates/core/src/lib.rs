//! Irreversible dynamic monopolies for degree-proportional thresholds.
//!
//! * [`graph`]: simple undirected graphs, edge-list parsing, girth.
//! * [`cascade`]: thresholds, the activation hull and monopoly checks.
//! * [`exact`]: exhaustive minimum monopolies and the permutation bound.
//! * [`constructors`]: seed-set constructions with hull verification.
//! * [`generators`]: deterministic and seeded instance families.

pub mod cascade;
pub mod constructors;
pub mod exact;
pub mod generators;
pub mod graph;

pub use cascade::{hull, is_monopoly, proportional_thresholds, CascadeResult, Rho, ThresholdProfile};
pub use graph::{Graph, Vertex};
