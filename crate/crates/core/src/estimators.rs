//! Single-vertex betweenness: exact, sampled, and the size-based dispatcher.
//!
//! All three start from the reach set of the target (see
//! [`crate::reachability`]). [`ebcd`] sums dependencies over every member,
//! [`abcd`] samples members uniformly with replacement and rescales, and
//! [`bcd`] chooses between them by comparing the set size with `tau`.
//!
//! Sample lists are drawn sequentially from a seeded ChaCha8 stream before
//! any work is scheduled, so results are reproducible regardless of how the
//! per-source work is spread over threads.

use std::time::Instant;

use rand::distr::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, VertexId};
use crate::parallel;
use crate::reachability::{compute_rv, ReachSet};

/// Default reach-set size up to which [`bcd`] computes exactly; also its
/// sample count above that size.
pub const DEFAULT_TAU: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Approximate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BcEstimate {
    pub target: VertexId,
    pub score: f64,
    pub mode: Mode,
    /// 0 for exact results.
    pub samples_used: usize,
    /// 0 when the reach set was not computed (out-degree 0 shortcut, baseline).
    pub rv_size: usize,
    pub rv_seconds: f64,
    pub compute_seconds: f64,
    pub rng_seed: Option<u64>,
}

impl BcEstimate {
    fn zero(target: VertexId, mode: Mode) -> Self {
        BcEstimate {
            target,
            score: 0.0,
            mode,
            samples_used: 0,
            rv_size: 0,
            rv_seconds: 0.0,
            compute_seconds: 0.0,
            rng_seed: None,
        }
    }

    fn with_reach(mut self, rs: &ReachSet) -> Self {
        self.rv_size = rs.size();
        self.rv_seconds = rs.rv_seconds();
        self
    }
}

/// Number of samples that bounds the additive error by `epsilon` with
/// probability at least `1 - delta`, for per-source dependencies in `[0, k]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingPlan {
    pub epsilon: f64,
    pub delta: f64,
    pub k: f64,
    pub rv_size: usize,
    pub required_samples: u64,
}

/// `ceil(ln(2/delta) * k^2 * rv_size^2 / (2 epsilon^2))`, at least 1.
pub fn required_samples(epsilon: f64, delta: f64, k: f64, rv_size: usize) -> Result<SamplingPlan> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::InvalidParameter(format!("epsilon must be > 0, got {epsilon}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!("delta must lie in (0, 1), got {delta}")));
    }
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::InvalidParameter(format!("K must be > 0, got {k}")));
    }
    let rv = rv_size as f64;
    let bound = (2.0 / delta).ln() * k * k * rv * rv / (2.0 * epsilon * epsilon);
    // Snap values within rounding noise of an integer so e.g. 150.0000000001 stays 150.
    let nearest = bound.round();
    let samples = if (bound - nearest).abs() <= 1e-9 * nearest.max(1.0) { nearest } else { bound.ceil() };
    if !samples.is_finite() || samples > u64::MAX as f64 {
        return Err(Error::InvalidParameter(format!("required sample count {bound} overflows")));
    }
    Ok(SamplingPlan { epsilon, delta, k, rv_size, required_samples: (samples as u64).max(1) })
}

/// The largest dependency any single source can have on one vertex of `g`:
/// each of the at most `n - 2` other targets contributes at most 1.
pub fn max_dependency_bound(g: &DirectedGraph) -> f64 {
    g.n().saturating_sub(2).max(1) as f64
}

/// Exact betweenness of `r`.
pub fn ebcd(g: &DirectedGraph, r: VertexId) -> BcEstimate {
    if g.out_degree(r) == 0 {
        return BcEstimate::zero(r, Mode::Exact);
    }
    let rs = compute_rv(g, r);
    exact_over(g, &rs)
}

/// Exact betweenness of `rs.target()` summed over an already computed reach set.
pub fn exact_over(g: &DirectedGraph, rs: &ReachSet) -> BcEstimate {
    let r = rs.target();
    let start = Instant::now();
    let score = if g.out_degree(r) == 0 {
        0.0
    } else {
        parallel::dependencies_on(g, rs.members(), r).iter().sum()
    };
    BcEstimate {
        score,
        compute_seconds: start.elapsed().as_secs_f64(),
        ..BcEstimate::zero(r, Mode::Exact).with_reach(rs)
    }
}

/// Estimates the betweenness of `r` from `samples` sources drawn uniformly
/// with replacement from its reach set.
pub fn abcd(g: &DirectedGraph, r: VertexId, samples: usize, seed: u64) -> BcEstimate {
    if g.out_degree(r) == 0 {
        return BcEstimate { rng_seed: Some(seed), ..BcEstimate::zero(r, Mode::Approximate) };
    }
    let rs = compute_rv(g, r);
    sample_over(g, &rs, samples, seed)
}

/// [`abcd`] on an already computed reach set.
pub fn sample_over(g: &DirectedGraph, rs: &ReachSet, samples: usize, seed: u64) -> BcEstimate {
    let r = rs.target();
    let base = BcEstimate { rng_seed: Some(seed), ..BcEstimate::zero(r, Mode::Approximate).with_reach(rs) };
    if rs.is_empty() || samples == 0 {
        return base;
    }
    let start = Instant::now();
    let drawn = draw_indices(rs.size(), samples, seed);
    let sources: Vec<VertexId> = drawn.iter().map(|&i| rs.members()[i]).collect();
    let sum = if g.out_degree(r) == 0 { 0.0 } else { sum_with_multiplicity(g, &sources, r) };
    BcEstimate {
        score: rs.size() as f64 / samples as f64 * sum,
        samples_used: samples,
        compute_seconds: start.elapsed().as_secs_f64(),
        ..base
    }
}

/// Exact when the reach set has at most `tau` members, otherwise [`abcd`]
/// with `tau` samples. The reach set is computed once.
pub fn bcd(g: &DirectedGraph, r: VertexId, tau: usize, seed: u64) -> BcEstimate {
    bcd_with_samples(g, r, tau, tau, seed)
}

/// [`bcd`] with the sample count of the approximate branch chosen separately.
pub fn bcd_with_samples(g: &DirectedGraph, r: VertexId, tau: usize, samples: usize, seed: u64) -> BcEstimate {
    let rs = compute_rv(g, r);
    bcd_over(g, &rs, tau, samples, seed)
}

/// Dispatch on an already computed reach set.
pub fn bcd_over(g: &DirectedGraph, rs: &ReachSet, tau: usize, samples: usize, seed: u64) -> BcEstimate {
    if rs.size() <= tau {
        exact_over(g, rs)
    } else {
        sample_over(g, rs, samples, seed)
    }
}

/// Classic estimator drawing `samples` sources uniformly from all vertices
/// other than `r` and scaling by `(n - 1) / samples`.
pub fn uniform_source_baseline(g: &DirectedGraph, r: VertexId, samples: usize, seed: u64) -> BcEstimate {
    let base = BcEstimate { rng_seed: Some(seed), ..BcEstimate::zero(r, Mode::Approximate) };
    let others = g.n() - 1;
    if others == 0 || samples == 0 {
        return base;
    }
    let start = Instant::now();
    let sources: Vec<VertexId> = draw_indices(others, samples, seed)
        .into_iter()
        .map(|i| VertexId::new(if i >= r.index() { i + 1 } else { i }))
        .collect();
    let sum = sum_with_multiplicity(g, &sources, r);
    BcEstimate {
        score: others as f64 / samples as f64 * sum,
        samples_used: samples,
        compute_seconds: start.elapsed().as_secs_f64(),
        ..base
    }
}

/// Relative error in percent, `|approx - exact| / exact * 100`.
///
/// `None` when `exact` is 0 and `approx` is not (the ratio is undefined);
/// two zeros count as a 0% error.
pub fn empirical_error(approx: f64, exact: f64) -> Option<f64> {
    if exact == 0.0 {
        return (approx == 0.0).then_some(0.0);
    }
    Some((approx - exact).abs() / exact.abs() * 100.0)
}

/// `samples` i.i.d. uniform indices in `0..len`. `Uniform` rejects the
/// biased zone of each draw, so every index is exactly equally likely.
fn draw_indices(len: usize, samples: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dist = Uniform::new(0u64, len as u64).expect("non-empty range");
    (0..samples).map(|_| dist.sample(&mut rng) as usize).collect()
}

/// `sum_t delta_{sources[t]}(r)`, computing each distinct source once.
fn sum_with_multiplicity(g: &DirectedGraph, sources: &[VertexId], r: VertexId) -> f64 {
    let mut distinct = sources.to_vec();
    distinct.sort_unstable();
    let mut counts: Vec<(VertexId, usize)> = Vec::new();
    for v in distinct {
        match counts.last_mut() {
            Some((last, c)) if *last == v => *c += 1,
            _ => counts.push((v, 1)),
        }
    }
    let unique: Vec<VertexId> = counts.iter().map(|&(v, _)| v).collect();
    let deps = parallel::dependencies_on(g, &unique, r);
    counts.iter().zip(deps).map(|(&(_, c), d)| c as f64 * d).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> VertexId {
        VertexId::new(i)
    }

    fn path3() -> DirectedGraph {
        DirectedGraph::from_dense_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn ebcd_on_path() {
        let est = ebcd(&path3(), v(1));
        assert_eq!(est.score, 1.0);
        assert_eq!(est.rv_size, 1);
        assert_eq!(est.mode, Mode::Exact);
        assert_eq!(est.samples_used, 0);
        assert_eq!(est.rng_seed, None);
    }

    #[test]
    fn sink_short_circuits() {
        let est = ebcd(&path3(), v(2));
        assert_eq!(est.score, 0.0);
        assert_eq!(est.rv_size, 0, "reach set must not be computed for a sink");
        assert_eq!(abcd(&path3(), v(2), 10, 1).score, 0.0);
    }

    #[test]
    fn abcd_single_possible_source() {
        for seed in 0..20 {
            let est = abcd(&path3(), v(1), 5, seed);
            assert_eq!(est.score, 1.0);
            assert_eq!(est.samples_used, 5);
            assert_eq!(est.mode, Mode::Approximate);
            assert_eq!(est.rng_seed, Some(seed));
        }
    }

    #[test]
    fn abcd_empty_reach_set() {
        // 0 -> 1 only; vertex 0 has out-degree 1 but nothing reaches it.
        let g = DirectedGraph::from_dense_edges(2, &[(0, 1)]).unwrap();
        let est = abcd(&g, v(0), 10, 3);
        assert_eq!((est.score, est.samples_used, est.rv_size), (0.0, 0, 0));
    }

    #[test]
    fn abcd_is_deterministic() {
        let g = crate::generate::random_digraph(40, 0.1, None, 9);
        for r in g.vertices().take(10) {
            let a = abcd(&g, r, 17, 42);
            let b = abcd(&g, r, 17, 42);
            assert_eq!(a.score.to_bits(), b.score.to_bits());
            assert_eq!(a.samples_used, b.samples_used);
        }
    }

    #[test]
    fn bcd_boundary_is_inclusive() {
        // Path 0 -> 1 -> 2 -> 3: reach set of 2 is {0, 1}.
        let g = DirectedGraph::from_dense_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(bcd(&g, v(2), 2, 0).mode, Mode::Exact);
        assert_eq!(bcd(&g, v(2), 1, 0).mode, Mode::Approximate);
        assert_eq!(bcd(&g, v(2), 2, 0).score, 2.0);
    }

    #[test]
    fn plan_matches_direct_evaluation() {
        let plan = required_samples(1.0, 0.1, 1.0, 10).unwrap();
        assert_eq!(plan.required_samples, 150);
    }

    #[test]
    fn plan_identity_gives_one_sample() {
        // ln(2/delta) * K^2 * rv^2 = 2 eps^2 with delta = 2/e^2, K = 1, rv = 2, eps = sqrt(4).
        let delta = 2.0 / std::f64::consts::E.powi(2);
        let plan = required_samples(2.0, delta, 1.0, 2).unwrap();
        assert_eq!(plan.required_samples, 1);
        assert_eq!(required_samples(1.0, 0.5, 1.0, 0).unwrap().required_samples, 1);
    }

    #[test]
    fn plan_quadruples_with_doubled_reach() {
        let a = required_samples(0.5, 0.05, 3.0, 100).unwrap().required_samples;
        let b = required_samples(0.5, 0.05, 3.0, 200).unwrap().required_samples;
        assert!((b as i64 - 4 * a as i64).abs() <= 4, "{a} {b}");
    }

    #[test]
    fn plan_rejects_bad_domain() {
        assert!(required_samples(0.0, 0.1, 1.0, 10).is_err());
        assert!(required_samples(1.0, 0.0, 1.0, 10).is_err());
        assert!(required_samples(1.0, 1.0, 1.0, 10).is_err());
        assert!(required_samples(1.0, 0.1, -1.0, 10).is_err());
        assert!(required_samples(f64::NAN, 0.1, 1.0, 10).is_err());
    }

    #[test]
    fn error_percentages() {
        assert_eq!(empirical_error(0.0, 19613.1), Some(100.0));
        assert_eq!(empirical_error(7.5, 7.5), Some(0.0));
        let e = empirical_error(87.96, 80.0).unwrap();
        assert!((e - 9.95).abs() < 1e-9, "{e}");
        assert_eq!(empirical_error(0.0, 0.0), Some(0.0));
        assert_eq!(empirical_error(1.0, 0.0), None);
    }

    #[test]
    fn baseline_excludes_target() {
        let g = path3();
        for seed in 0..10 {
            let est = uniform_source_baseline(&g, v(1), 4000, seed);
            // Sources 0 and 2 with equal odds; only 0 contributes 1.
            assert!((est.score - 1.0).abs() < 0.1, "{}", est.score);
        }
    }
}
