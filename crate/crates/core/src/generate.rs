//! Seeded random digraphs for tests and experiments.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::DirectedGraph;

/// Erdős–Rényi style digraph on `n` vertices: every ordered pair `(u, v)`,
/// `u != v`, becomes an edge with probability `p`. With `weights` set, each
/// edge gets an integer weight drawn uniformly from the range.
pub fn random_digraph(n: usize, p: f64, weights: Option<RangeInclusive<u32>>, seed: u64) -> DirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(p) {
                let w = weights.as_ref().map_or(1, |range| rng.random_range(range.clone()));
                edges.push((u, v, w as f64));
            }
        }
    }
    if weights.is_some() {
        DirectedGraph::from_dense_weighted_edges(n, &edges).expect("generated edges are valid")
    } else {
        let pairs: Vec<(usize, usize)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        DirectedGraph::from_dense_edges(n, &pairs).expect("generated edges are valid")
    }
}
