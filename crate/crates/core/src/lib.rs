//! Betweenness centrality of individual vertices in directed graphs.
//!
//! The central observation is that only vertices with a directed path to a
//! target `r` can have a non-zero dependency on it. Those vertices are found
//! with a single traversal of the reverse graph ([`reachability`]), after
//! which the betweenness of `r` is either accumulated exactly over that set
//! ([`estimators::ebcd`]) or estimated by sampling sources uniformly from it
//! ([`estimators::abcd`]). [`estimators::bcd`] picks between the two based on
//! the size of the reachable set.
//!
//! Scores are raw (unnormalized): `BC(v)` is the sum over ordered pairs
//! `(s, t)` of the fraction of shortest `s -> t` paths passing through `v`.

pub mod dependency;
pub mod error;
pub mod estimators;
pub mod generate;
pub mod graph;
mod parallel;
pub mod reachability;
pub mod spd;

pub use dependency::{accumulate, betweenness_all, dependency_on_target, DependencyVector};
pub use error::{Error, Result};
pub use estimators::{
    abcd, bcd, ebcd, empirical_error, required_samples, uniform_source_baseline, BcEstimate,
    Mode, SamplingPlan,
};
pub use graph::{load_edge_list, DirectedGraph, EdgeListSource, VertexId};
pub use reachability::{compute_rv, ReachSet};
pub use spd::{build_spd, build_spd_unweighted, build_spd_weighted, ShortestPathDag};
