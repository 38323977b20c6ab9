//! Benchmark harness around `bcd-core`: per-vertex experiments with
//! TSV/JSON reports, synthetic gadget graphs and timing-scaling runs.

pub mod error;
pub mod experiment;
pub mod gadget;
pub mod report;
pub mod scaling;

pub use error::HarnessError;
pub use experiment::{run_on_graph, run_vertex_experiment, ExperimentConfig, OutputFormat, VertexSelection};
pub use gadget::{generate_gadget, Gadget, GadgetKind};
pub use report::{ErrorCell, Row, SetReport};
pub use scaling::{timing_scaling_report, ScalingReport};
