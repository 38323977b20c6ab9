//! Shortest-path DAGs rooted at a single source.
//!
//! A [`ShortestPathDag`] owns dense per-vertex arrays and can be rebuilt for
//! another source in place. Rebuilding only resets the vertices the previous
//! build reached, so the cost of a build is proportional to the part of the
//! graph it explores rather than to `n`.
//!
//! Path counts are `f64`. Counts above 2^53 are no longer exact integers,
//! which is harmless for dependency ratios but worth knowing.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use crate::graph::{DirectedGraph, VertexId};

/// Distances `a` and `b` are treated as equal when they agree to a relative
/// tolerance of 1e-9 (absolute 1e-9 below 1). Integer weights never hit it.
#[inline]
pub fn same_distance(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * 1f64.max(a.abs()).max(b.abs())
}

#[derive(Debug, Clone)]
pub struct ShortestPathDag {
    source: VertexId,
    dist: Vec<f64>,
    sigma: Vec<f64>,
    preds: Vec<Vec<VertexId>>,
    order: Vec<VertexId>,
    settled: Vec<bool>,
    queue: VecDeque<VertexId>,
    heap: BinaryHeap<HeapEntry>,
}

impl ShortestPathDag {
    /// An empty DAG for a graph with `n` vertices; nothing is reachable until
    /// one of the `rebuild_*` methods runs.
    pub fn with_capacity(n: usize) -> Self {
        ShortestPathDag {
            source: VertexId::new(0),
            dist: vec![f64::INFINITY; n],
            sigma: vec![0.0; n],
            preds: vec![Vec::new(); n],
            order: Vec::new(),
            settled: vec![false; n],
            queue: VecDeque::new(),
            heap: BinaryHeap::new(),
        }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    /// Distance per vertex; `f64::INFINITY` for unreachable vertices.
    pub fn distances(&self) -> &[f64] {
        &self.dist
    }

    pub fn dist(&self, v: VertexId) -> f64 {
        self.dist[v.index()]
    }

    /// Number of shortest paths from the source per vertex.
    pub fn sigmas(&self) -> &[f64] {
        &self.sigma
    }

    pub fn sigma(&self, v: VertexId) -> f64 {
        self.sigma[v.index()]
    }

    /// Predecessors of `w` on shortest paths from the source.
    pub fn preds(&self, w: VertexId) -> &[VertexId] {
        &self.preds[w.index()]
    }

    /// Reachable vertices in the order they were settled (non-decreasing distance).
    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn is_reachable(&self, v: VertexId) -> bool {
        self.dist[v.index()].is_finite()
    }

    pub fn vertex_count(&self) -> usize {
        self.dist.len()
    }

    fn reset(&mut self, n: usize, source: VertexId) {
        if self.dist.len() != n {
            *self = Self::with_capacity(n);
        } else {
            for &v in &self.order {
                let i = v.index();
                self.dist[i] = f64::INFINITY;
                self.sigma[i] = 0.0;
                self.preds[i].clear();
                self.settled[i] = false;
            }
            self.order.clear();
        }
        self.source = source;
        let s = source.index();
        self.dist[s] = 0.0;
        self.sigma[s] = 1.0;
    }

    /// Breadth-first build; edge weights, if any, are ignored.
    pub fn rebuild_unweighted(&mut self, g: &DirectedGraph, s: VertexId) {
        self.reset(g.n(), s);
        self.queue.clear();
        self.queue.push_back(s);
        while let Some(v) = self.queue.pop_front() {
            self.order.push(v);
            let next = self.dist[v.index()] + 1.0;
            let sigma_v = self.sigma[v.index()];
            for &w in g.out_neighbors(v) {
                let wi = w.index();
                if self.dist[wi].is_infinite() {
                    self.dist[wi] = next;
                    self.queue.push_back(w);
                }
                if self.dist[wi] == next {
                    self.sigma[wi] += sigma_v;
                    self.preds[wi].push(v);
                }
            }
        }
    }

    /// Dijkstra build. An unweighted graph is treated as having unit weights.
    pub fn rebuild_weighted(&mut self, g: &DirectedGraph, s: VertexId) {
        self.reset(g.n(), s);
        self.heap.clear();
        self.heap.push(HeapEntry { dist: 0.0, vertex: s });
        while let Some(HeapEntry { vertex: v, .. }) = self.heap.pop() {
            let vi = v.index();
            if self.settled[vi] {
                continue;
            }
            self.settled[vi] = true;
            self.order.push(v);
            let dist_v = self.dist[vi];
            let sigma_v = self.sigma[vi];
            let weights = g.out_weights(v);
            for (i, &w) in g.out_neighbors(v).iter().enumerate() {
                let wi = w.index();
                if self.settled[wi] {
                    continue;
                }
                let candidate = dist_v + weights.map_or(1.0, |ws| ws[i]);
                let current = self.dist[wi];
                if current.is_infinite() || (candidate < current && !same_distance(candidate, current)) {
                    self.dist[wi] = candidate;
                    self.sigma[wi] = sigma_v;
                    self.preds[wi].clear();
                    self.preds[wi].push(v);
                    self.heap.push(HeapEntry { dist: candidate, vertex: w });
                } else if same_distance(candidate, current) {
                    self.sigma[wi] += sigma_v;
                    self.preds[wi].push(v);
                }
            }
        }
    }

    /// Dijkstra on weighted graphs, BFS otherwise.
    pub fn rebuild(&mut self, g: &DirectedGraph, s: VertexId) {
        if g.is_weighted() {
            self.rebuild_weighted(g, s)
        } else {
            self.rebuild_unweighted(g, s)
        }
    }
}

pub fn build_spd_unweighted(g: &DirectedGraph, s: VertexId) -> ShortestPathDag {
    let mut spd = ShortestPathDag::with_capacity(g.n());
    spd.rebuild_unweighted(g, s);
    spd
}

pub fn build_spd_weighted(g: &DirectedGraph, s: VertexId) -> ShortestPathDag {
    let mut spd = ShortestPathDag::with_capacity(g.n());
    spd.rebuild_weighted(g, s);
    spd
}

/// Builds with Dijkstra when `g` carries weights and with BFS otherwise.
pub fn build_spd(g: &DirectedGraph, s: VertexId) -> ShortestPathDag {
    let mut spd = ShortestPathDag::with_capacity(g.n());
    spd.rebuild(g, s);
    spd
}

#[derive(Debug, Clone, Copy)]
struct HeapEntry {
    dist: f64,
    vertex: VertexId,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    // Reversed: BinaryHeap is a max-heap and we want the closest vertex first.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}
