//! Brandes dependency accumulation.

use crate::graph::{DirectedGraph, VertexId};
use crate::parallel;
use crate::spd::ShortestPathDag;

/// Dependencies `delta_s(v)` of one source on every vertex.
///
/// The entry for the source itself is always 0, as are entries for vertices
/// the source cannot reach. Like [`ShortestPathDag`] this can be refilled in
/// place; only the entries touched by the previous fill are cleared.
#[derive(Debug, Clone)]
pub struct DependencyVector {
    source: VertexId,
    delta: Vec<f64>,
    touched: Vec<VertexId>,
}

impl DependencyVector {
    pub fn zeros(n: usize) -> Self {
        DependencyVector { source: VertexId::new(0), delta: vec![0.0; n], touched: Vec::new() }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn values(&self) -> &[f64] {
        &self.delta
    }

    pub fn get(&self, v: VertexId) -> f64 {
        self.delta[v.index()]
    }

    /// Replaces the contents with the dependencies of `spd.source()`.
    ///
    /// Sweeps the settle order backwards; for each `w` and each predecessor
    /// `v` it adds `sigma[v] / sigma[w] * (1 + delta[w])` to `delta[v]`.
    pub fn accumulate_from(&mut self, spd: &ShortestPathDag) {
        let n = spd.vertex_count();
        if self.delta.len() != n {
            self.delta = vec![0.0; n];
        } else {
            for &v in &self.touched {
                self.delta[v.index()] = 0.0;
            }
        }
        let sigma = spd.sigmas();
        for &w in spd.order().iter().rev() {
            let wi = w.index();
            let carried = 1.0 + self.delta[wi];
            for &v in spd.preds(w) {
                self.delta[v.index()] += sigma[v.index()] / sigma[wi] * carried;
            }
        }
        self.source = spd.source();
        self.delta[self.source.index()] = 0.0;
        self.touched.clear();
        self.touched.extend_from_slice(spd.order());
    }
}

pub fn accumulate(spd: &ShortestPathDag) -> DependencyVector {
    let mut dv = DependencyVector::zeros(spd.vertex_count());
    dv.accumulate_from(spd);
    dv
}

/// Dependency of the SPD's source on `r`.
pub fn dependency_on_target(spd: &ShortestPathDag, r: VertexId) -> f64 {
    accumulate(spd).get(r)
}

/// Exact betweenness of every vertex (Brandes over all sources), unnormalized.
///
/// Uses Dijkstra on weighted graphs and BFS otherwise.
pub fn betweenness_all(g: &DirectedGraph) -> Vec<f64> {
    let sources: Vec<VertexId> = g.vertices().collect();
    parallel::sum_dependency_vectors(g, &sources)
}
