//! Brute-force oracles shared by the integration and acceptance tests.
//!
//! Nothing here touches the BFS/Dijkstra/accumulation code under test:
//! distances come from Floyd–Warshall over integer weights, and every
//! shortest path is enumerated explicitly.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeSet, VecDeque};

use bcd_core::{DirectedGraph, VertexId};

const INF: u64 = u64::MAX;

pub struct PathOracle {
    pub n: usize,
    /// `dist[s][t]`, `u64::MAX` when unreachable.
    pub dist: Vec<Vec<u64>>,
    /// Number of shortest paths `s -> t` (1 for `s == t`).
    pub count: Vec<Vec<u64>>,
    /// `dep[s][v] = sum_t sigma_st(v) / sigma_st`.
    pub dep: Vec<Vec<f64>>,
    /// `sum_t (sum over shortest s-t paths of interior length) / sigma_st`.
    pub interior_mass: Vec<f64>,
    pub bc: Vec<f64>,
}

fn integer_weight(w: Option<f64>) -> u64 {
    match w {
        None => 1,
        Some(w) => {
            assert!(w.fract() == 0.0 && w >= 1.0, "oracle needs positive integer weights, got {w}");
            w as u64
        }
    }
}

pub fn enumerate_paths(g: &DirectedGraph) -> PathOracle {
    let n = g.n();
    let mut adj: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
    let mut dist = vec![vec![INF; n]; n];
    for i in 0..n {
        dist[i][i] = 0;
    }
    for (u, v, w) in g.edges() {
        let w = integer_weight(w);
        adj[u.index()].push((v.index(), w));
        dist[u.index()][v.index()] = dist[u.index()][v.index()].min(w);
    }
    for k in 0..n {
        for i in 0..n {
            if dist[i][k] == INF {
                continue;
            }
            for j in 0..n {
                if dist[k][j] != INF && dist[i][k] + dist[k][j] < dist[i][j] {
                    dist[i][j] = dist[i][k] + dist[k][j];
                }
            }
        }
    }

    let mut count = vec![vec![0u64; n]; n];
    let mut dep = vec![vec![0.0; n]; n];
    let mut interior_mass = vec![0.0; n];
    for s in 0..n {
        let mut through = vec![vec![0u64; n]; n];
        let mut interior_len = vec![0u64; n];
        let mut path = vec![s];
        count[s][s] = 1;
        walk(s, &adj, &dist[s], &mut path, &mut count[s], &mut through, &mut interior_len);
        for t in 0..n {
            if t == s || count[s][t] == 0 {
                continue;
            }
            let c = count[s][t] as f64;
            for v in 0..n {
                dep[s][v] += through[t][v] as f64 / c;
            }
            interior_mass[s] += interior_len[t] as f64 / c;
        }
    }

    let mut bc = vec![0.0; n];
    for s in 0..n {
        for v in 0..n {
            bc[v] += dep[s][v];
        }
    }
    PathOracle { n, dist, count, dep, interior_mass, bc }
}

/// Extends `path` along every tight edge; each extension is one shortest path
/// from `path[0]` to its last vertex.
fn walk(
    u: usize,
    adj: &[Vec<(usize, u64)>],
    dist_s: &[u64],
    path: &mut Vec<usize>,
    count: &mut [u64],
    through: &mut [Vec<u64>],
    interior_len: &mut [u64],
) {
    for &(v, w) in &adj[u] {
        if dist_s[v] == INF || dist_s[u] + w != dist_s[v] {
            continue;
        }
        path.push(v);
        count[v] += 1;
        for &x in &path[1..path.len() - 1] {
            through[v][x] += 1;
        }
        interior_len[v] += (path.len() - 2) as u64;
        walk(v, adj, dist_s, path, count, through, interior_len);
        path.pop();
    }
}

/// `reach[v][r]` is true when a forward BFS from `v` hits `r`.
pub fn forward_reachability(g: &DirectedGraph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut out = vec![vec![false; n]; n];
    for s in 0..n {
        let mut queue = VecDeque::from([s]);
        out[s][s] = true;
        while let Some(u) = queue.pop_front() {
            for &v in g.out_neighbors(VertexId::new(u)) {
                if !out[s][v.index()] {
                    out[s][v.index()] = true;
                    queue.push_back(v.index());
                }
            }
        }
    }
    out
}

/// Edge set with every pair flipped, computed from the raw edge iterator.
pub fn flipped_edges(g: &DirectedGraph) -> BTreeSet<(usize, usize)> {
    g.edges().map(|(u, v, _)| (v.index(), u.index())).collect()
}

pub fn edge_set(g: &DirectedGraph) -> BTreeSet<(usize, usize)> {
    g.edges().map(|(u, v, _)| (u.index(), v.index())).collect()
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

/// Largest single-source dependency on `r`.
pub fn max_dependency(oracle: &PathOracle, r: usize) -> f64 {
    (0..oracle.n).map(|s| oracle.dep[s][r]).fold(0.0, f64::max)
}
