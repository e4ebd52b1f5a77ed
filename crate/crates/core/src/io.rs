//! JSON and DOT formats for graphs, density matrices and reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use crate::linalg::CMatrix;

/// Serde adapter writing a complex number as `{"re": .., "im": ..}`.
pub mod complex_object {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Parts {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        Parts { re: z.re + 0.0, im: z.im + 0.0 }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let p = Parts::deserialize(d)?;
        Ok(Complex64::new(p.re, p.im))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexEntry {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexEntry {
    fn from(z: Complex64) -> Self {
        Self { re: z.re + 0.0, im: z.im + 0.0 }
    }
}

impl From<ComplexEntry> for Complex64 {
    fn from(e: ComplexEntry) -> Self {
        Complex64::new(e.re, e.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub from: usize,
    pub to: usize,
    pub re: f64,
    pub im: f64,
}

/// `{"vertices": N, "edges": [...], "shape": [m, n]}`, shape optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: usize,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<[usize; 2]>,
}

impl GraphDocument {
    /// One record per conjugate pair, loops included, in `(from, to)` order.
    pub fn from_graph(graph: &WeightedDigraph, shape: Option<(usize, usize)>) -> Self {
        let edges = graph
            .undirected_edges()
            .map(|(from, to, w)| EdgeRecord { from, to, re: w.re + 0.0, im: w.im + 0.0 })
            .collect();
        Self { vertices: graph.order(), edges, shape: shape.map(|(m, n)| [m, n]) }
    }

    /// Builds the graph. A pair listed in both directions must carry exact
    /// conjugate weights; a repeated direction must repeat its weight.
    pub fn to_graph(&self) -> Result<WeightedDigraph> {
        let mut graph = WeightedDigraph::new(self.vertices)?;
        let mut seen: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
        for e in &self.edges {
            let w = Complex64::new(e.re, e.im);
            let pairs = [((e.from, e.to), w), ((e.to, e.from), w.conj())];
            for &(key, value) in &pairs[..if e.from == e.to { 1 } else { 2 }] {
                if let Some(&prev) = seen.get(&key) {
                    if prev != value {
                        return Err(Error::ConflictingEdge { from: e.from, to: e.to });
                    }
                }
                seen.insert(key, value);
            }
            graph.add_edge(e.from, e.to, w)?;
        }
        Ok(graph)
    }

    pub fn shape(&self) -> Option<(usize, usize)> {
        self.shape.map(|[m, n]| (m, n))
    }
}

/// `{"order": N, "entries": [[{"re": .., "im": ..}, ...], ...]}`, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityDocument {
    pub order: usize,
    pub entries: Vec<Vec<ComplexEntry>>,
}

impl DensityDocument {
    pub fn from_matrix(matrix: &CMatrix) -> Self {
        let entries = matrix
            .row_iter()
            .map(|row| row.iter().map(|&z| z.into()).collect())
            .collect();
        Self { order: matrix.nrows(), entries }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let rows = self.entries.len();
        if rows != self.order {
            return Err(Error::ShapeMismatch { expected: self.order, actual: rows });
        }
        for row in &self.entries {
            if row.len() != self.order {
                return Err(Error::NotSquare { rows, cols: row.len() });
            }
        }
        Ok(CMatrix::from_fn(rows, rows, |i, j| self.entries[i][j].into()))
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.to_matrix()?)
    }
}

pub fn parse_graph(text: &str) -> Result<GraphDocument> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

pub fn parse_density(text: &str) -> Result<DensityDocument> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

/// JSON formatter printing every float with 17 significant digits.
#[derive(Debug, Clone, Copy, Default)]
pub struct FixedPrecision;

impl serde_json::ser::Formatter for FixedPrecision {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Compact JSON with fixed float formatting, so equal values always give
/// identical bytes.
pub fn to_canonical_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedPrecision);
    value.serialize(&mut ser).expect("serializing to memory cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// `re±im i`, e.g. `0.5-0.25i`.
pub fn format_weight(w: Complex64) -> String {
    let sign = if w.im < 0.0 { '-' } else { '+' };
    format!("{}{}{}i", w.re + 0.0, sign, w.im.abs())
}

/// DOT text for the graph. With a cluster size `n`, vertices are labelled
/// `v_{μ,i}`; one arrow per conjugate pair carries `w(from, to)`.
pub fn to_dot(graph: &WeightedDigraph, cluster_size: Option<usize>) -> String {
    let label = |v: usize| match cluster_size {
        Some(n) if n > 0 => format!("v_{{{},{}}}", v / n + 1, v % n + 1),
        _ => format!("v_{{{v}}}"),
    };
    let mut out = String::from("digraph G {\n");
    for v in 0..graph.order() {
        let _ = writeln!(out, "  {v} [label=\"{}\"];", label(v));
    }
    for (i, j, w) in graph.undirected_edges() {
        let _ = writeln!(out, "  {i} -> {j} [label=\"{}\"];", format_weight(w));
    }
    out.push_str("}\n");
    out
}
