//! Vertices that can reach a target, found by BFS on the reverse graph.
//!
//! A vertex with no directed path to `r` has no shortest path through `r`,
//! so its dependency on `r` is zero. The reverse adjacency is stored in the
//! graph, so a query is one BFS with a private visited bitmap and costs
//! `O(n + m)` regardless of edge weights.

use std::time::Instant;

use crate::graph::{DirectedGraph, VertexId};

#[derive(Debug, Clone, PartialEq)]
pub struct ReachSet {
    target: VertexId,
    /// Ascending, excludes `target`.
    members: Vec<VertexId>,
    rv_seconds: f64,
}

impl ReachSet {
    pub fn target(&self) -> VertexId {
        self.target
    }

    /// Vertices with a directed path to the target, ascending.
    pub fn members(&self) -> &[VertexId] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Wall time spent computing the set.
    pub fn rv_seconds(&self) -> f64 {
        self.rv_seconds
    }

    /// `|members| / n`.
    pub fn ratio(&self, g: &DirectedGraph) -> f64 {
        if g.n() == 0 {
            0.0
        } else {
            self.size() as f64 / g.n() as f64
        }
    }
}

pub fn compute_rv(g: &DirectedGraph, r: VertexId) -> ReachSet {
    let start = Instant::now();
    let mut visited = vec![false; g.n()];
    visited[r.index()] = true;
    // The queue doubles as the visit record; everything after `r` is a member.
    let mut queue = vec![r];
    let mut head = 0;
    while let Some(&v) = queue.get(head) {
        head += 1;
        for &u in g.in_neighbors(v) {
            if !visited[u.index()] {
                visited[u.index()] = true;
                queue.push(u);
            }
        }
    }
    let mut members = queue.split_off(1);
    members.sort_unstable();
    ReachSet { target: r, members, rv_seconds: start.elapsed().as_secs_f64() }
}
