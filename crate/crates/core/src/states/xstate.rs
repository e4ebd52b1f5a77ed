//! X-state graphs: every non-loop edge joins position `k` of one cluster to
//! position `n + 1 − k` of another (or the same) cluster.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clustering::ClusteredGraph;
use crate::density::{self, LaplacianKind};
use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use crate::tol;

/// Edge `(v_{μk}, v_{ν,n+1−k})` with weight `re + im·i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AntiDiagonalEdge {
    pub k: usize,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossBlock {
    pub clusters: [usize; 2],
    pub edges: Vec<AntiDiagonalEdge>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagonalBlock {
    pub cluster: usize,
    pub edges: Vec<AntiDiagonalEdge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopWeight {
    pub cluster: usize,
    pub vertex: usize,
    pub weight: f64,
}

/// Edge lists of an X-state graph on `m` clusters of `n` vertices.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XStateSpec {
    pub m: usize,
    pub n: usize,
    #[serde(default)]
    pub cross_edges: Vec<CrossBlock>,
    #[serde(default)]
    pub diag_clusters: Vec<DiagonalBlock>,
    #[serde(default)]
    pub loops: Vec<LoopWeight>,
}

struct Builder {
    m: usize,
    n: usize,
    graph: WeightedDigraph,
    assigned: BTreeMap<(usize, usize), Complex64>,
}

impl Builder {
    fn index(&self, mu: usize, i: usize) -> Result<usize> {
        if !(1..=self.m).contains(&mu) {
            return Err(Error::InvalidParameter(format!("cluster {mu} out of range 1..={}", self.m)));
        }
        if !(1..=self.n).contains(&i) {
            return Err(Error::InvalidParameter(format!("position {i} out of range 1..={}", self.n)));
        }
        Ok((mu - 1) * self.n + (i - 1))
    }

    fn put(&mut self, from: usize, to: usize, w: Complex64) -> Result<()> {
        let pairs = [((from, to), w), ((to, from), w.conj())];
        for &(key, value) in &pairs[..if from == to { 1 } else { 2 }] {
            if self.assigned.get(&key).is_some_and(|&prev| prev != value) {
                return Err(Error::ConflictingEdge { from, to });
            }
            self.assigned.insert(key, value);
        }
        self.graph.add_edge(from, to, w)
    }

    fn put_anti_diagonal(&mut self, mu: usize, nu: usize, e: &AntiDiagonalEdge) -> Result<()> {
        let from = self.index(mu, e.k)?;
        let to = self.index(nu, self.n + 1 - e.k)?;
        self.put(from, to, Complex64::new(e.re, e.im))
    }
}

/// Builds the graph described by `spec`. At most one diagonal cluster may
/// carry edges.
pub fn xstate_graph(spec: &XStateSpec) -> Result<ClusteredGraph> {
    let nonempty: std::collections::BTreeSet<usize> =
        spec.diag_clusters.iter().filter(|b| !b.edges.is_empty()).map(|b| b.cluster).collect();
    if nonempty.len() > 1 {
        return Err(Error::NotXState(format!("clusters {nonempty:?} all carry internal edges")));
    }
    let order = spec.m * spec.n;
    let mut b = Builder { m: spec.m, n: spec.n, graph: WeightedDigraph::new(order)?, assigned: BTreeMap::new() };
    for block in &spec.cross_edges {
        let [mu, nu] = block.clusters;
        if mu == nu {
            return Err(Error::InvalidParameter(format!("cross block ({mu}, {nu}) joins a cluster to itself")));
        }
        for e in &block.edges {
            b.put_anti_diagonal(mu, nu, e)?;
        }
    }
    for block in &spec.diag_clusters {
        for e in &block.edges {
            b.put_anti_diagonal(block.cluster, block.cluster, e)?;
        }
    }
    for l in &spec.loops {
        let v = b.index(l.cluster, l.vertex)?;
        b.put(v, v, Complex64::new(l.weight, 0.0))?;
    }
    ClusteredGraph::new(b.graph, spec.m, spec.n)
}

/// Both combinatorial characteristics: every non-loop edge is anti-diagonal,
/// and at most one cluster has non-loop internal edges.
pub fn is_xstate(cg: &ClusteredGraph) -> bool {
    let n = cg.cluster_size();
    let mut internal = std::collections::BTreeSet::new();
    for (a, b, _) in cg.graph().edges() {
        if a == b {
            continue;
        }
        let (mu, i) = cg.label(a);
        let (nu, j) = cg.label(b);
        if j != n + 1 - i {
            return false;
        }
        if mu == nu {
            internal.insert(mu);
        }
    }
    internal.len() <= 1
}

/// Zero discord decided by the two X-state conditions: all nonempty cross
/// blocks `A_{μν}` (ordered, `μ ≠ ν`) are equal, and `d_{μi} = d_{μ,n+1−i}`
/// within `tol` for every vertex.
///
/// The conditions match the full structural criterion when the common cross
/// block is Hermitian, loops are symmetric under `k ↔ n+1−k`, and each
/// internal weight `y_k` of the diagonal cluster makes `x_k·conj(y_k)` real.
pub fn xstate_zero_discord(cg: &ClusteredGraph, kind: LaplacianKind, tol: f64) -> Result<bool> {
    if !is_xstate(cg) {
        return Err(Error::NotXState("edge set is not anti-diagonal with one internal cluster".into()));
    }
    density::from_graph(cg.graph(), kind)?;
    let (m, n) = (cg.clusters(), cg.cluster_size());

    let mut reference = None;
    for mu in 1..=m {
        for nu in (1..=m).filter(|&nu| nu != mu) {
            if cg.is_block_empty(mu, nu) {
                continue;
            }
            let block = cg.adjacency_block(mu, nu);
            match &reference {
                None => reference = Some(block),
                Some(r) => {
                    let equal = r
                        .iter()
                        .zip(block.iter())
                        .all(|(a, b)| (a.re - b.re).abs() <= tol::ZERO_WEIGHT && (a.im - b.im).abs() <= tol::ZERO_WEIGHT);
                    if !equal {
                        return Ok(false);
                    }
                }
            }
        }
    }

    let symmetric = (1..=m).all(|mu| (1..=n).all(|i| (cg.degree(mu, i) - cg.degree(mu, n + 1 - i)).abs() <= tol));
    Ok(symmetric)
}
