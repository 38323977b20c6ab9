use std::time::Instant;

use bcd_core::ebcd;
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;
use crate::gadget::{generate_gadget, GadgetKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub kind: GadgetKind,
    /// `(n, seconds)`: fastest of the repetitions of exact betweenness of the
    /// gadget's target, graph construction excluded.
    pub rows: Vec<(usize, f64)>,
    /// Least-squares slope of `ln(seconds)` against `ln(n)`; `None` for fewer
    /// than two sizes.
    pub slope: Option<f64>,
}

pub fn timing_scaling_report(kind: GadgetKind, sizes: &[usize], reps: usize) -> Result<ScalingReport, HarnessError> {
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(HarnessError::Config("sizes must be strictly ascending".into()));
    }
    let reps = reps.max(1);
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let gadget = generate_gadget(kind, n)?;
        let best = (0..reps)
            .map(|_| {
                let start = Instant::now();
                std::hint::black_box(ebcd(&gadget.graph, gadget.target));
                start.elapsed().as_secs_f64()
            })
            .fold(f64::INFINITY, f64::min);
        rows.push((n, best));
    }
    let slope = log_log_slope(&rows);
    Ok(ScalingReport { kind, rows, slope })
}

pub fn log_log_slope(rows: &[(usize, f64)]) -> Option<f64> {
    if rows.len() < 2 {
        return None;
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|&(n, t)| ((n as f64).ln(), t.max(1e-12).ln()))
        .collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

impl ScalingReport {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n\tseconds\n");
        for (n, t) in &self.rows {
            out.push_str(&format!("{n}\t{t}\n"));
        }
        if let Some(slope) = self.slope {
            out.push_str(&format!("# slope\t{slope}\n"));
        }
        out
    }
}
