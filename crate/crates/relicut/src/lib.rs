#![forbid(unsafe_code)]

//! Network reliability estimation under independent random edge failures.
//!
//! The library computes the probability FAIL(p) that a multigraph
//! disconnects when each edge fails independently, along with several
//! variants (k-edge-connectivity, multiterminal, r-way partition, strong
//! connectivity of Eulerian digraphs, random orientations) and Tutte
//! polynomial evaluations driven by the same failure model.
//!
//! Estimation runs in one of two regimes. When the failure probability is
//! large, direct Monte Carlo simulation suffices. When it is small, the
//! estimators enumerate near-minimum cuts with a randomized contraction
//! procedure and reduce the union of cut-failure events to DNF probability
//! estimation (Karp-Luby-Madras coverage sampling). Deterministic
//! alternatives (a sum-of-cut-probabilities heuristic and a truncated
//! inclusion-exclusion scheme with certified error bounds) and naive
//! brute-force oracles round out the toolkit.

pub mod connectivity;
pub mod cut_enum;
pub mod detapprox;
pub mod dnf;
pub mod error;
pub mod estimators;
pub mod generators;
pub mod multigraph;
pub mod oracle;
pub mod tutte;

pub mod cli;

mod parallel;

pub use error::{Error, Result};
pub use multigraph::{Digraph, Multigraph, WeightedView};
