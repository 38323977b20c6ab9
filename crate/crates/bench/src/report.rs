//! Per-vertex result rows and set-level aggregates, with TSV and JSON codecs.
//!
//! The TSV layout mirrors the usual per-vertex results table: one header
//! line, one row per vertex, then `#`-prefixed aggregate lines. Floats are
//! written in Rust's shortest round-trip form, so parsing a written report
//! gives back the identical value.

use std::fmt::Write as _;

use bcd_core::{empirical_error, BcEstimate, DirectedGraph, Mode};
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;

/// Error column of a row.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "Option<ErrorRepr>", into = "Option<ErrorRepr>")]
pub enum ErrorCell {
    /// No ground truth was computed.
    #[default]
    NotComputed,
    /// The exact score is 0 but the estimate is not.
    Undefined,
    Percent(f64),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum ErrorRepr {
    Percent(f64),
    Flag(String),
}

impl From<Option<ErrorRepr>> for ErrorCell {
    fn from(r: Option<ErrorRepr>) -> Self {
        match r {
            None => ErrorCell::NotComputed,
            Some(ErrorRepr::Percent(p)) => ErrorCell::Percent(p),
            Some(ErrorRepr::Flag(_)) => ErrorCell::Undefined,
        }
    }
}

impl From<ErrorCell> for Option<ErrorRepr> {
    fn from(c: ErrorCell) -> Self {
        match c {
            ErrorCell::NotComputed => None,
            ErrorCell::Undefined => Some(ErrorRepr::Flag("undefined".into())),
            ErrorCell::Percent(p) => Some(ErrorRepr::Percent(p)),
        }
    }
}

impl ErrorCell {
    pub fn percent(self) -> Option<f64> {
        match self {
            ErrorCell::Percent(p) => Some(p),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    /// Original vertex label.
    pub target: u64,
    pub score: f64,
    pub mode: Mode,
    pub rv_size: usize,
    pub rv_ratio: f64,
    pub samples: usize,
    pub rv_seconds: f64,
    pub compute_seconds: f64,
    pub seed: Option<u64>,
    #[serde(default)]
    pub error: ErrorCell,
}

/// Rounds wall times to millisecond resolution.
pub fn millis(seconds: f64) -> f64 {
    (seconds * 1000.0).round() / 1000.0
}

impl Row {
    pub fn from_estimate(g: &DirectedGraph, est: &BcEstimate, exact: Option<f64>) -> Self {
        let error = match exact {
            None => ErrorCell::NotComputed,
            Some(exact) => empirical_error(est.score, exact).map_or(ErrorCell::Undefined, ErrorCell::Percent),
        };
        Row {
            target: g.label(est.target),
            score: est.score,
            mode: est.mode,
            rv_size: est.rv_size,
            rv_ratio: est.rv_size as f64 / g.n() as f64,
            samples: est.samples_used,
            rv_seconds: millis(est.rv_seconds),
            compute_seconds: millis(est.compute_seconds),
            seed: est.rng_seed,
            error,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetReport {
    pub rows: Vec<Row>,
    pub avg_error: Option<f64>,
    pub max_error: Option<f64>,
    pub min_error: Option<f64>,
    pub total_compute_seconds: f64,
    pub total_rv_seconds: f64,
}

const HEADER: [&str; 10] =
    ["target", "bc", "rv_size", "rv_ratio", "mode", "samples", "seed", "time", "time_rv", "error"];

impl SetReport {
    /// Aggregates are taken over rows with a defined error percentage.
    pub fn from_rows(rows: Vec<Row>) -> Self {
        let errors: Vec<f64> = rows.iter().filter_map(|r| r.error.percent()).collect();
        let avg_error = (!errors.is_empty()).then(|| errors.iter().sum::<f64>() / errors.len() as f64);
        let max_error = errors.iter().copied().reduce(f64::max);
        let min_error = errors.iter().copied().reduce(f64::min);
        let total_compute_seconds = rows.iter().map(|r| r.compute_seconds).sum();
        let total_rv_seconds = rows.iter().map(|r| r.rv_seconds).sum();
        SetReport { rows, avg_error, max_error, min_error, total_compute_seconds, total_rv_seconds }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, HarnessError> {
        serde_json::from_str(s).map_err(|e| HarnessError::Report(e.to_string()))
    }

    pub fn to_tsv(&self) -> String {
        let mut out = HEADER.join("\t");
        out.push('\n');
        for r in &self.rows {
            let mode = match r.mode {
                Mode::Exact => "E",
                Mode::Approximate => "A",
            };
            let seed = r.seed.map_or("-".to_string(), |s| s.to_string());
            let error = match r.error {
                ErrorCell::NotComputed => "-".to_string(),
                ErrorCell::Undefined => "undefined".to_string(),
                ErrorCell::Percent(p) => p.to_string(),
            };
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.target, r.score, r.rv_size, r.rv_ratio, mode, r.samples, seed, r.compute_seconds, r.rv_seconds, error
            );
        }
        let opt = |x: Option<f64>| x.map_or("-".to_string(), |v| v.to_string());
        let _ = writeln!(out, "# avg_error\t{}", opt(self.avg_error));
        let _ = writeln!(out, "# max_error\t{}", opt(self.max_error));
        let _ = writeln!(out, "# min_error\t{}", opt(self.min_error));
        let _ = writeln!(out, "# total_time\t{}", self.total_compute_seconds);
        let _ = writeln!(out, "# total_time_rv\t{}", self.total_rv_seconds);
        out
    }

    pub fn from_tsv(s: &str) -> Result<Self, HarnessError> {
        let bad = |line: usize, what: &str| HarnessError::Report(format!("line {line}: {what}"));
        let mut lines = s.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (_, header) = lines.next().ok_or_else(|| bad(1, "missing header"))?;
        if header.split('\t').collect::<Vec<_>>() != HEADER {
            return Err(bad(1, "unexpected header"));
        }

        let mut rows = Vec::new();
        let mut agg: [Option<Option<f64>>; 5] = [None; 5];
        for (no, line) in lines {
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("# ") {
                let (key, value) = rest.split_once('\t').ok_or_else(|| bad(no, "malformed summary"))?;
                let slot = match key {
                    "avg_error" => 0,
                    "max_error" => 1,
                    "min_error" => 2,
                    "total_time" => 3,
                    "total_time_rv" => 4,
                    _ => return Err(bad(no, "unknown summary key")),
                };
                agg[slot] = Some(parse_opt(value).map_err(|_| bad(no, "invalid number"))?);
                continue;
            }
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != HEADER.len() {
                return Err(bad(no, "wrong column count"));
            }
            let num = |i: usize| -> Result<f64, HarnessError> { f[i].parse().map_err(|_| bad(no, HEADER[i])) };
            let int = |i: usize| -> Result<u64, HarnessError> { f[i].parse().map_err(|_| bad(no, HEADER[i])) };
            rows.push(Row {
                target: int(0)?,
                score: num(1)?,
                rv_size: int(2)? as usize,
                rv_ratio: num(3)?,
                mode: match f[4] {
                    "E" => Mode::Exact,
                    "A" => Mode::Approximate,
                    _ => return Err(bad(no, "mode")),
                },
                samples: int(5)? as usize,
                seed: if f[6] == "-" { None } else { Some(int(6)?) },
                compute_seconds: num(7)?,
                rv_seconds: num(8)?,
                error: match f[9] {
                    "-" => ErrorCell::NotComputed,
                    "undefined" => ErrorCell::Undefined,
                    _ => ErrorCell::Percent(num(9)?),
                },
            });
        }
        let missing = || HarnessError::Report("missing summary lines".into());
        let total = |x: Option<Option<f64>>| x.ok_or_else(missing)?.ok_or_else(missing);
        Ok(SetReport {
            rows,
            avg_error: agg[0].ok_or_else(missing)?,
            max_error: agg[1].ok_or_else(missing)?,
            min_error: agg[2].ok_or_else(missing)?,
            total_compute_seconds: total(agg[3])?,
            total_rv_seconds: total(agg[4])?,
        })
    }
}

fn parse_opt(s: &str) -> Result<Option<f64>, std::num::ParseFloatError> {
    if s == "-" {
        Ok(None)
    } else {
        s.parse().map(Some)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(target: u64, error: ErrorCell, mode: Mode) -> Row {
        Row {
            target,
            score: 1234.5 + target as f64 / 3.0,
            mode,
            rv_size: 17,
            rv_ratio: 17.0 / 62586.0,
            samples: if mode == Mode::Exact { 0 } else { 1000 },
            rv_seconds: 0.041,
            compute_seconds: 0.953,
            seed: (mode == Mode::Approximate).then_some(42),
            error,
        }
    }

    fn sample() -> SetReport {
        SetReport::from_rows(vec![
            row(46263, ErrorCell::Percent(0.0), Mode::Exact),
            row(37518, ErrorCell::Percent(11.31), Mode::Approximate),
            row(5, ErrorCell::Undefined, Mode::Approximate),
            row(9, ErrorCell::NotComputed, Mode::Exact),
        ])
    }

    #[test]
    fn aggregates() {
        let r = sample();
        assert_eq!(r.min_error, Some(0.0));
        assert_eq!(r.max_error, Some(11.31));
        assert_eq!(r.avg_error, Some(11.31 / 2.0));
        assert!(r.min_error <= r.avg_error && r.avg_error <= r.max_error);
        assert_eq!(r.total_rv_seconds, 0.041 * 4.0);
    }

    #[test]
    fn tsv_round_trip() {
        let r = sample();
        let back = SetReport::from_tsv(&r.to_tsv()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let json = r.to_json();
        assert!(json.contains("\"undefined\""));
        assert!(json.contains("\"mode\": \"approximate\""));
        assert_eq!(SetReport::from_json(&json).unwrap(), r);
    }

    #[test]
    fn empty_report() {
        let r = SetReport::from_rows(Vec::new());
        assert_eq!(r.avg_error, None);
        assert_eq!(SetReport::from_tsv(&r.to_tsv()).unwrap(), r);
    }

    #[test]
    fn rejects_bad_tsv() {
        assert!(SetReport::from_tsv("").is_err());
        assert!(SetReport::from_tsv("a\tb\n").is_err());
        let mut text = sample().to_tsv();
        text = text.replace("\tE\t", "\tX\t");
        assert!(SetReport::from_tsv(&text).is_err());
    }

    #[test]
    fn millisecond_rounding() {
        assert_eq!(millis(0.0424999), 0.042);
        assert_eq!(millis(1.2345678), 1.235);
    }
}
