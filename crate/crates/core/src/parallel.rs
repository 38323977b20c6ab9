//! Per-source work fanned out over the rayon pool.
//!
//! Sources are split into at most `MAX_CHUNKS` contiguous chunks whose layout
//! depends only on the number of sources, never on the thread count, so the
//! floating-point summation order (and thus every result bit) is the same on
//! any machine. Each chunk owns one SPD and one dependency buffer that are
//! rebuilt in place for every source of the chunk.

use rayon::prelude::*;

use crate::dependency::DependencyVector;
use crate::graph::{DirectedGraph, VertexId};
use crate::spd::ShortestPathDag;

const MAX_CHUNKS: usize = 16;
const MIN_CHUNK_LEN: usize = 32;

fn chunk_len(len: usize) -> usize {
    len.div_ceil(MAX_CHUNKS).max(MIN_CHUNK_LEN)
}

struct Scratch {
    spd: ShortestPathDag,
    dep: DependencyVector,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch { spd: ShortestPathDag::with_capacity(n), dep: DependencyVector::zeros(n) }
    }

    fn run(&mut self, g: &DirectedGraph, s: VertexId) {
        self.spd.rebuild(g, s);
        self.dep.accumulate_from(&self.spd);
    }
}

/// `delta_s(target)` for every `s` in `sources`, in the same order.
pub(crate) fn dependencies_on(g: &DirectedGraph, sources: &[VertexId], target: VertexId) -> Vec<f64> {
    if sources.is_empty() {
        return Vec::new();
    }
    sources
        .par_chunks(chunk_len(sources.len()))
        .flat_map_iter(|chunk| {
            let mut scratch = Scratch::new(g.n());
            chunk
                .iter()
                .map(|&s| {
                    scratch.run(g, s);
                    scratch.dep.get(target)
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Elementwise sum of the dependency vectors of all `sources`.
pub(crate) fn sum_dependency_vectors(g: &DirectedGraph, sources: &[VertexId]) -> Vec<f64> {
    let n = g.n();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(chunk_len(sources.len().max(1)))
        .map(|chunk| {
            let mut scratch = Scratch::new(n);
            let mut total = vec![0.0; n];
            for &s in chunk {
                scratch.run(g, s);
                for &v in scratch.spd.order() {
                    total[v.index()] += scratch.dep.get(v);
                }
            }
            total
        })
        .collect();
    let mut total = vec![0.0; n];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    total
}
