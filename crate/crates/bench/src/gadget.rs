//! Two `n + 2` vertex graphs showing that the reach-set size alone does not
//! determine the cost of exact betweenness.
//!
//! * `fan`: `n` sources each with a single edge into `r`, and `r` feeding one
//!   extra sink. `|RV(r)| = n` but every shortest-path DAG has 3 vertices, so
//!   the exact computation is linear in `n`.
//! * `broom`: a directed path of `n / 2` vertices leading into `r`, which
//!   fans out to `n / 2 + 1` sinks. `|RV(r)| = n / 2` and every DAG spans
//!   `Theta(n)` vertices, so the exact computation is quadratic.

use std::fmt;
use std::str::FromStr;

use bcd_core::{DirectedGraph, VertexId};
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GadgetKind {
    Fan,
    Broom,
}

impl FromStr for GadgetKind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fan" => Ok(GadgetKind::Fan),
            "broom" => Ok(GadgetKind::Broom),
            other => Err(HarnessError::Config(format!("unknown gadget kind {other:?}"))),
        }
    }
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GadgetKind::Fan => "fan",
            GadgetKind::Broom => "broom",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Gadget {
    pub graph: DirectedGraph,
    /// The vertex whose betweenness the gadget is built around.
    pub target: VertexId,
}

pub fn generate_gadget(kind: GadgetKind, n: usize) -> Result<Gadget, HarnessError> {
    if n < 2 {
        return Err(HarnessError::Config(format!("gadget size must be >= 2, got {n}")));
    }
    let edges: Vec<(usize, usize)> = match kind {
        // r = 0, sources 1..=n, sink n + 1.
        GadgetKind::Fan => (1..=n).map(|i| (i, 0)).chain([(0, n + 1)]).collect(),
        GadgetKind::Broom => {
            if !n.is_multiple_of(2) {
                return Err(HarnessError::Config(format!("broom size must be even, got {n}")));
            }
            // Path 0 -> 1 -> ... -> h - 1 -> r = h, sinks h + 1 ..= n + 1.
            let h = n / 2;
            (0..h).map(|i| (i, i + 1)).chain((h + 1..=n + 1).map(|s| (h, s))).collect()
        }
    };
    let target = match kind {
        GadgetKind::Fan => 0,
        GadgetKind::Broom => n / 2,
    };
    let graph = DirectedGraph::from_dense_edges(n + 2, &edges)?;
    Ok(Gadget { graph, target: VertexId::new(target) })
}
