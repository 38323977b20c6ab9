use std::path::PathBuf;

use bcd_core::estimators::{bcd_over, max_dependency_bound, DEFAULT_TAU};
use bcd_core::{betweenness_all, compute_rv, load_edge_list, required_samples, DirectedGraph, EdgeListSource, VertexId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;
use crate::report::{Row, SetReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Tsv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum VertexSelection {
    /// Original vertex labels.
    Labels(Vec<u64>),
    /// `size` distinct vertices drawn with the experiment seed. Vertices with
    /// out-degree 0 are skipped unless `include_sinks` is set.
    Random { size: usize, include_sinks: bool },
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub graph: PathBuf,
    pub weighted: bool,
    pub vertices: VertexSelection,
    pub tau: usize,
    /// Sample count of the approximate branch; defaults to `tau`.
    pub samples: Option<usize>,
    pub seed: u64,
    /// Dependency bound for the (epsilon, delta) sample plan; defaults to `n - 2`.
    pub k: Option<f64>,
    pub epsilon: Option<f64>,
    pub delta: Option<f64>,
    pub format: OutputFormat,
    /// Compute exact ground truth for the error column.
    pub oracle: bool,
}

impl ExperimentConfig {
    pub fn new(graph: impl Into<PathBuf>, vertices: VertexSelection) -> Self {
        ExperimentConfig {
            graph: graph.into(),
            weighted: false,
            vertices,
            tau: DEFAULT_TAU,
            samples: None,
            seed: 0,
            k: None,
            epsilon: None,
            delta: None,
            format: OutputFormat::Tsv,
            oracle: false,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let config = |m: &str| Err(HarnessError::Config(m.to_string()));
        if self.tau == 0 {
            return config("tau must be >= 1");
        }
        if self.samples == Some(0) {
            return config("samples must be >= 1");
        }
        if self.epsilon.is_some() != self.delta.is_some() {
            return config("epsilon and delta must be given together");
        }
        if self.epsilon.is_some() && self.samples.is_some() {
            return config("samples and epsilon/delta are mutually exclusive");
        }
        if let Some(k) = self.k {
            if !(k.is_finite() && k > 0.0) {
                return config("K must be > 0");
            }
        }
        match &self.vertices {
            VertexSelection::Labels(l) if l.is_empty() => config("no vertices given"),
            VertexSelection::Random { size: 0, .. } => config("random set size must be >= 1"),
            _ => Ok(()),
        }
    }
}

/// Loads the configured graph and runs [`run_on_graph`].
pub fn run_vertex_experiment(cfg: &ExperimentConfig) -> Result<SetReport, HarnessError> {
    cfg.validate()?;
    let g = load_edge_list(&EdgeListSource::path(&cfg.graph).weighted(cfg.weighted))?;
    run_on_graph(&g, cfg)
}

/// One dispatched estimate per selected vertex, run sequentially so row
/// timings do not compete with each other.
pub fn run_on_graph(g: &DirectedGraph, cfg: &ExperimentConfig) -> Result<SetReport, HarnessError> {
    cfg.validate()?;
    let targets = select_vertices(g, &cfg.vertices, cfg.seed)?;
    let exact = cfg.oracle.then(|| betweenness_all(g));

    let mut rows = Vec::with_capacity(targets.len());
    for r in targets {
        let rs = compute_rv(g, r);
        let samples = match (cfg.epsilon, cfg.delta) {
            (Some(eps), Some(delta)) => {
                let k = cfg.k.unwrap_or_else(|| max_dependency_bound(g));
                let plan = required_samples(eps, delta, k, rs.size())?;
                usize::try_from(plan.required_samples)
                    .map_err(|_| HarnessError::Config("required sample count too large".into()))?
            }
            _ => cfg.samples.unwrap_or(cfg.tau),
        };
        let est = bcd_over(g, &rs, cfg.tau, samples, cfg.seed);
        rows.push(Row::from_estimate(g, &est, exact.as_ref().map(|bc| bc[r.index()])));
    }
    Ok(SetReport::from_rows(rows))
}

pub fn select_vertices(g: &DirectedGraph, sel: &VertexSelection, seed: u64) -> Result<Vec<VertexId>, HarnessError> {
    match sel {
        VertexSelection::Labels(labels) => labels
            .iter()
            .map(|&l| g.vertex(l).ok_or(HarnessError::UnknownVertex(l)))
            .collect(),
        &VertexSelection::Random { size, include_sinks } => {
            let candidates: Vec<VertexId> =
                g.vertices().filter(|&v| include_sinks || g.out_degree(v) > 0).collect();
            if size == 0 || size > candidates.len() {
                return Err(HarnessError::Config(format!(
                    "random set size must be in 1..={}, got {size}",
                    candidates.len()
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(rand::seq::index::sample(&mut rng, candidates.len(), size)
                .into_iter()
                .map(|i| candidates[i])
                .collect())
        }
    }
}
