//! Immutable directed graphs in compressed sparse row form.
//!
//! Both the forward adjacency and the reverse graph are materialized at
//! construction. Vertices are dense indices `0..n`; the original labels from
//! an edge-list file are kept in ascending order so a label lookup is a binary
//! search and dense index order matches label order.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense vertex index in `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(u32);

impl VertexId {
    /// Panics if `index` does not fit the 32-bit index space.
    #[inline]
    pub fn new(index: usize) -> Self {
        VertexId(u32::try_from(index).expect("vertex index exceeds u32::MAX"))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<VertexId> for usize {
    fn from(v: VertexId) -> usize {
        v.index()
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
}

impl Csr {
    /// `pairs` must be sorted by (source, target).
    fn from_sorted(n: usize, pairs: impl Iterator<Item = (u32, u32)>) -> Self {
        let mut offsets = vec![0usize; n + 1];
        let mut targets = Vec::new();
        for (u, v) in pairs {
            offsets[u as usize + 1] += 1;
            targets.push(VertexId(v));
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        Csr { offsets, targets }
    }

    #[inline]
    fn range(&self, v: VertexId) -> std::ops::Range<usize> {
        self.offsets[v.index()]..self.offsets[v.index() + 1]
    }

    #[inline]
    fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.targets[self.range(v)]
    }
}

/// A simple directed graph: no self-loops, no parallel edges.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectedGraph {
    fwd: Csr,
    rev: Csr,
    /// Aligned with `fwd.targets`.
    weights: Option<Vec<f64>>,
    /// Dense index -> original label, strictly ascending.
    labels: Vec<u64>,
}

impl DirectedGraph {
    /// Builds a graph over vertices `0..n` from dense `(u, v)` pairs.
    ///
    /// Self-loops are dropped and duplicate pairs collapse to one.
    pub fn from_dense_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let raw = edges
            .iter()
            .map(|&(u, v)| Ok((check_index(u, n)?, check_index(v, n)?, None)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::assemble((0..n as u64).collect(), raw, false))
    }

    /// Weighted variant of [`from_dense_edges`](Self::from_dense_edges). For
    /// duplicate pairs the first weight wins.
    pub fn from_dense_weighted_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let raw = edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v, w))| {
                if !(w.is_finite() && w > 0.0) {
                    return Err(Error::NonPositiveWeight { line: i + 1, weight: w });
                }
                Ok((check_index(u, n)?, check_index(v, n)?, Some(w)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::assemble((0..n as u64).collect(), raw, true))
    }

    /// `labels` must be strictly ascending; `edges` are dense and in input order.
    fn assemble(labels: Vec<u64>, mut edges: Vec<(u32, u32, Option<f64>)>, weighted: bool) -> Self {
        let n = labels.len();
        edges.retain(|&(u, v, _)| u != v);
        // Stable sort keeps the first occurrence of each pair at the front of its run.
        edges.sort_by_key(|&(u, v, _)| (u, v));
        edges.dedup_by_key(|&mut (u, v, _)| (u, v));

        let fwd = Csr::from_sorted(n, edges.iter().map(|&(u, v, _)| (u, v)));
        let weights = weighted.then(|| edges.iter().map(|&(_, _, w)| w.unwrap_or(1.0)).collect());

        let mut flipped: Vec<(u32, u32)> = edges.iter().map(|&(u, v, _)| (v, u)).collect();
        flipped.sort_unstable();
        let rev = Csr::from_sorted(n, flipped.into_iter());

        DirectedGraph { fwd, rev, weights, labels }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.fwd.targets.len()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = VertexId> + ExactSizeIterator + 'static {
        (0..self.n()).map(VertexId::new)
    }

    #[inline]
    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        self.fwd.neighbors(v)
    }

    /// In-neighbors of `v`, i.e. its out-neighbors in the reverse graph.
    #[inline]
    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        self.rev.neighbors(v)
    }

    /// Weights of the out-edges of `v`, aligned with [`out_neighbors`](Self::out_neighbors).
    #[inline]
    pub fn out_weights(&self, v: VertexId) -> Option<&[f64]> {
        self.weights.as_deref().map(|w| &w[self.fwd.range(v)])
    }

    #[inline]
    pub fn out_degree(&self, v: VertexId) -> usize {
        self.fwd.range(v).len()
    }

    #[inline]
    pub fn in_degree(&self, v: VertexId) -> usize {
        self.rev.range(v).len()
    }

    pub fn contains_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.out_neighbors(u).binary_search(&v).is_ok()
    }

    /// All edges as `(u, v, weight)`, sorted by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, Option<f64>)> + '_ {
        self.vertices().flat_map(move |u| {
            let ws = self.out_weights(u);
            self.out_neighbors(u)
                .iter()
                .enumerate()
                .map(move |(i, &v)| (u, v, ws.map(|w| w[i])))
        })
    }

    /// Original label of a dense vertex.
    pub fn label(&self, v: VertexId) -> u64 {
        self.labels[v.index()]
    }

    /// Dense vertex carrying the original label `label`, if any.
    pub fn vertex(&self, label: u64) -> Option<VertexId> {
        self.labels.binary_search(&label).ok().map(VertexId::new)
    }

    /// The reverse graph: every edge flipped, weights dropped.
    pub fn reversed(&self) -> DirectedGraph {
        DirectedGraph {
            fwd: self.rev.clone(),
            rev: self.fwd.clone(),
            weights: None,
            labels: self.labels.clone(),
        }
    }

    /// Same graph with edge weights discarded.
    pub fn unweighted(&self) -> DirectedGraph {
        DirectedGraph { weights: None, ..self.clone() }
    }

    /// Writes the graph as an edge list using original labels.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (u, v, w) in self.edges() {
            match w {
                Some(w) => writeln!(out, "{}\t{}\t{}", self.label(u), self.label(v), w)?,
                None => writeln!(out, "{}\t{}", self.label(u), self.label(v))?,
            }
        }
        Ok(())
    }
}

fn check_index(i: usize, n: usize) -> Result<u32> {
    if i < n {
        Ok(i as u32)
    } else {
        Err(Error::VertexOutOfRange { index: i, n })
    }
}

#[derive(Debug, Clone)]
pub enum EdgeListInput {
    Path(PathBuf),
    Text(String),
}

/// Where and how to read an edge list.
#[derive(Debug, Clone)]
pub struct EdgeListSource {
    pub input: EdgeListInput,
    pub weighted: bool,
    pub comment: char,
}

impl EdgeListSource {
    pub fn path(path: impl Into<PathBuf>) -> Self {
        EdgeListSource { input: EdgeListInput::Path(path.into()), weighted: false, comment: '#' }
    }

    pub fn text(text: impl Into<String>) -> Self {
        EdgeListSource { input: EdgeListInput::Text(text.into()), weighted: false, comment: '#' }
    }

    pub fn weighted(mut self, weighted: bool) -> Self {
        self.weighted = weighted;
        self
    }

    pub fn comment(mut self, prefix: char) -> Self {
        self.comment = prefix;
        self
    }
}

/// Reads a whitespace-separated edge list (`u v` or `u v w` per line).
///
/// Labels are arbitrary non-negative integers and are remapped to dense
/// indices in ascending label order. Self-loops are dropped (a label that only
/// occurs in self-loops does not become a vertex) and duplicate edges keep the
/// first weight seen. Unweighted sources ignore columns past the second, so
/// signed SNAP files load as plain digraphs.
pub fn load_edge_list(src: &EdgeListSource) -> Result<DirectedGraph> {
    match &src.input {
        EdgeListInput::Path(path) => {
            let file = File::open(path).map_err(|source| Error::Io { path: path.clone(), source })?;
            parse_edge_list(BufReader::new(file), src.weighted, src.comment).map_err(|e| match e {
                Error::Io { source, .. } => Error::Io { path: path.clone(), source },
                e => e,
            })
        }
        EdgeListInput::Text(text) => parse_edge_list(text.as_bytes(), src.weighted, src.comment),
    }
}

fn parse_edge_list<R: BufRead>(mut reader: R, weighted: bool, comment: char) -> Result<DirectedGraph> {
    let mut raw: Vec<(u64, u64, Option<f64>)> = Vec::new();
    let mut buf = String::new();
    let mut line_no = 0usize;
    loop {
        buf.clear();
        let read = reader
            .read_line(&mut buf)
            .map_err(|source| Error::Io { path: PathBuf::new(), source })?;
        if read == 0 {
            break;
        }
        line_no += 1;
        let line = buf.trim();
        if line.is_empty() || line.starts_with(comment) {
            continue;
        }
        raw.push(parse_line(line, line_no, weighted)?);
    }

    let mut labels: Vec<u64> = raw
        .iter()
        .filter(|&&(u, v, _)| u != v)
        .flat_map(|&(u, v, _)| [u, v])
        .collect();
    labels.sort_unstable();
    labels.dedup();
    if labels.is_empty() {
        return Err(Error::EmptyGraph);
    }

    let dense = |label: u64| labels.binary_search(&label).map(|i| i as u32);
    let edges = raw
        .iter()
        .filter_map(|&(u, v, w)| Some((dense(u).ok()?, dense(v).ok()?, w)))
        .collect();
    Ok(DirectedGraph::assemble(labels, edges, weighted))
}

fn parse_line(line: &str, line_no: usize, weighted: bool) -> Result<(u64, u64, Option<f64>)> {
    let malformed = |message: String| Error::Malformed { line: line_no, message };
    let mut fields = line.split_whitespace();
    let mut vertex = |name: &str| -> Result<u64> {
        let tok = fields.next().ok_or_else(|| malformed(format!("missing {name} vertex")))?;
        tok.parse()
            .map_err(|_| malformed(format!("invalid {name} vertex label {tok:?}")))
    };
    let u = vertex("source")?;
    let v = vertex("target")?;
    if !weighted {
        return Ok((u, v, None));
    }
    let tok = fields
        .next()
        .ok_or_else(|| malformed("missing edge weight".to_string()))?;
    let w: f64 = tok
        .parse()
        .map_err(|_| malformed(format!("invalid edge weight {tok:?}")))?;
    if let Some(extra) = fields.next() {
        return Err(malformed(format!("unexpected extra field {extra:?}")));
    }
    if !(w.is_finite() && w > 0.0) {
        return Err(Error::NonPositiveWeight { line: line_no, weight: w });
    }
    Ok((u, v, Some(w)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(s: &str) -> DirectedGraph {
        load_edge_list(&EdgeListSource::text(s)).unwrap()
    }

    fn v(i: usize) -> VertexId {
        VertexId::new(i)
    }

    #[test]
    fn two_edge_path() {
        let g = text("0 1\n1 2");
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(g.in_neighbors(v(2)), &[v(1)]);
        assert_eq!(g.out_degree(v(1)), 1);
        assert_eq!(g.out_degree(v(2)), 0);
    }

    #[test]
    fn duplicates_dropped_antiparallel_kept() {
        let g = text("0 1\n0 1\n1 0");
        assert_eq!(g.m(), 2);
        assert_eq!(g.in_neighbors(v(0)), &[v(1)]);
        assert_eq!(g.in_neighbors(v(1)), &[v(0)]);
    }

    #[test]
    fn comments_crlf_and_sparse_labels() {
        let g = text("# Directed graph\r\n# FromNodeId\tToNodeId\r\n10\t700\r\n700\t42\r\n\r\n");
        assert_eq!(g.n(), 3);
        assert_eq!(g.vertex(42), Some(v(1)));
        assert_eq!(g.vertex(700), Some(v(2)));
        assert_eq!(g.label(v(0)), 10);
        assert!(g.contains_edge(v(0), v(2)));
        assert!(g.contains_edge(v(2), v(1)));
        assert_eq!(g.vertex(11), None);
    }

    #[test]
    fn self_loops_removed() {
        let g = text("0 0\n0 1\n1 1\n5 5");
        assert_eq!((g.n(), g.m()), (2, 1));
        assert!(matches!(load_edge_list(&EdgeListSource::text("3 3\n")), Err(Error::EmptyGraph)));
    }

    #[test]
    fn malformed_lines_report_line_number() {
        let err = load_edge_list(&EdgeListSource::text("0 1\n# c\n1 x\n")).unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 3, .. }), "{err}");
        let err = load_edge_list(&EdgeListSource::text("0 1\n7\n")).unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 2, .. }));
        let err = load_edge_list(&EdgeListSource::text("0 1\n").weighted(true)).unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 1, .. }));
        let err = load_edge_list(&EdgeListSource::text("0 1 2 3\n").weighted(true)).unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 1, .. }));
    }

    #[test]
    fn weights_must_be_positive() {
        for bad in ["0", "-1.5", "nan", "inf"] {
            let src = EdgeListSource::text(format!("0 1 1\n1 2 {bad}\n")).weighted(true);
            let err = load_edge_list(&src).unwrap_err();
            assert!(matches!(err, Error::NonPositiveWeight { line: 2, .. }), "{bad}: {err}");
        }
        assert!(DirectedGraph::from_dense_weighted_edges(2, &[(0, 1, 0.0)]).is_err());
    }

    #[test]
    fn empty_input_rejected() {
        assert!(matches!(load_edge_list(&EdgeListSource::text("# nothing\n")), Err(Error::EmptyGraph)));
    }

    #[test]
    fn first_weight_wins() {
        let g = load_edge_list(&EdgeListSource::text("0 1 2.5\n0 1 9\n").weighted(true)).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.out_weights(v(0)), Some(&[2.5][..]));
    }

    #[test]
    fn unweighted_ignores_extra_columns() {
        let g = text("0 1 -1\n1 2 1\n");
        assert_eq!(g.m(), 2);
        assert!(!g.is_weighted());
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_edge_list(&EdgeListSource::path("/nonexistent/graph.txt")).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }

    #[test]
    fn reverse_of_path() {
        let g = text("0 1\n1 2");
        let r = g.reversed();
        assert_eq!((r.n(), r.m()), (3, 2));
        assert!(r.contains_edge(v(2), v(1)));
        assert!(r.contains_edge(v(1), v(0)));
        assert!(!r.contains_edge(v(0), v(1)));
        assert!(!r.is_weighted());
    }

    #[test]
    fn dense_constructor_rejects_out_of_range() {
        let err = DirectedGraph::from_dense_edges(2, &[(0, 2)]).unwrap_err();
        assert!(matches!(err, Error::VertexOutOfRange { index: 2, n: 2 }));
    }

    #[test]
    fn sink_and_middle_degrees() {
        let g = DirectedGraph::from_dense_edges(4, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.out_degree(v(2)), 0);
        assert_eq!(g.out_degree(v(1)), 1);
        assert_eq!(g.out_degree(v(3)), 0);
        assert_eq!(g.in_degree(v(3)), 0);
    }
}
