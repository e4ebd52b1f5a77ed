//! Cluster partitions, block extraction and the neighborhood algebra.
//!
//! A graph on `m·n` vertices is split into clusters `C_1..C_m` of `n` vertices
//! each. Vertex `v_{μi}` (cluster `μ`, position `i`, both 1-based) has flat
//! index `(μ−1)·n + (i−1)`. All public functions here take the 1-based pair.

use std::collections::BTreeSet;

use num_complex::Complex64;

use crate::density::{self, LaplacianKind};
use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use crate::linalg::{block, CMatrix, ZERO};
use crate::tol;

/// Sorted set of 1-based positions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IndexSet(BTreeSet<usize>);

impl IndexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn intersection<'a>(&'a self, other: &'a IndexSet) -> impl Iterator<Item = usize> + 'a {
        self.0.intersection(&other.0).copied()
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// A neighborhood with its weights: positions `k` and the weight of the edge
/// reaching position `k` of the neighboring cluster.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseVector {
    entries: Vec<(usize, Complex64)>,
}

impl SparseVector {
    fn from_sorted(entries: Vec<(usize, Complex64)>) -> Self {
        Self { entries }
    }

    /// Nonzero entries of a dense vector, positions 1-based.
    pub fn from_dense(values: &[Complex64]) -> Self {
        Self::from_sorted(
            values
                .iter()
                .enumerate()
                .filter(|(_, z)| z.norm() > tol::ZERO_WEIGHT)
                .map(|(k, &z)| (k + 1, z))
                .collect(),
        )
    }

    pub fn support(&self) -> IndexSet {
        self.entries.iter().map(|&(k, _)| k).collect()
    }

    pub fn get(&self, k: usize) -> Option<Complex64> {
        self.entries
            .binary_search_by_key(&k, |&(i, _)| i)
            .ok()
            .map(|pos| self.entries[pos].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.entries.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ_{k ∈ nbd(a) ∩ nbd(b)} a(k)·b(k)`, without conjugation.
    pub fn product(&self, other: &SparseVector) -> Complex64 {
        let (mut p, mut q) = (0, 0);
        let mut acc = ZERO;
        while p < self.entries.len() && q < other.entries.len() {
            let (ka, wa) = self.entries[p];
            let (kb, wb) = other.entries[q];
            match ka.cmp(&kb) {
                std::cmp::Ordering::Less => p += 1,
                std::cmp::Ordering::Greater => q += 1,
                std::cmp::Ordering::Equal => {
                    acc += wa * wb;
                    p += 1;
                    q += 1;
                }
            }
        }
        acc
    }
}

/// Positions (1-based) of entries with modulus above the zero threshold.
pub fn support(a: &[Complex64]) -> IndexSet {
    SparseVector::from_dense(a).support()
}

/// Support-restricted product of two dense vectors.
pub fn support_product(a: &[Complex64], b: &[Complex64]) -> Result<Complex64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    Ok(SparseVector::from_dense(a).product(&SparseVector::from_dense(b)))
}

/// The `m×m` grid of `n×n` blocks of a clustered density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockFamily {
    m: usize,
    n: usize,
    blocks: Vec<CMatrix>,
}

impl BlockFamily {
    /// Slices a square matrix of order `m·n` into blocks.
    pub fn from_matrix(matrix: &CMatrix, m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameter("cluster shape must be positive".into()));
        }
        if !matrix.is_square() || matrix.nrows() != m * n {
            return Err(Error::ShapeMismatch { expected: m * n, actual: matrix.nrows() });
        }
        let blocks = (0..m)
            .flat_map(|bi| (0..m).map(move |bj| (bi, bj)))
            .map(|(bi, bj)| block(matrix, bi, bj, n))
            .collect();
        Ok(Self { m, n, blocks })
    }

    pub fn clusters(&self) -> usize {
        self.m
    }

    pub fn block_order(&self) -> usize {
        self.n
    }

    /// Block `B_{μν}`, 1-based.
    pub fn block(&self, mu: usize, nu: usize) -> &CMatrix {
        assert!((1..=self.m).contains(&mu) && (1..=self.m).contains(&nu), "cluster index out of range");
        &self.blocks[(mu - 1) * self.m + (nu - 1)]
    }

    /// Every block, row-major over `(μ, ν)`.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &CMatrix)> + '_ {
        self.blocks
            .iter()
            .enumerate()
            .map(|(k, b)| ((k / self.m + 1, k % self.m + 1), b))
    }

    pub fn reassemble(&self) -> CMatrix {
        let (m, n) = (self.m, self.n);
        let mut out = CMatrix::zeros(m * n, m * n);
        for ((mu, nu), b) in self.iter() {
            out.view_mut(((mu - 1) * n, (nu - 1) * n), (n, n)).copy_from(b);
        }
        out
    }
}

/// A digraph on `m·n` vertices with its cluster shape.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusteredGraph {
    graph: WeightedDigraph,
    m: usize,
    n: usize,
}

impl ClusteredGraph {
    pub fn new(graph: WeightedDigraph, m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameter("cluster shape must be positive".into()));
        }
        if m * n != graph.order() {
            return Err(Error::ShapeMismatch { expected: m * n, actual: graph.order() });
        }
        Ok(Self { graph, m, n })
    }

    pub fn graph(&self) -> &WeightedDigraph {
        &self.graph
    }

    pub fn into_graph(self) -> WeightedDigraph {
        self.graph
    }

    pub fn clusters(&self) -> usize {
        self.m
    }

    pub fn cluster_size(&self) -> usize {
        self.n
    }

    /// Flat index of `v_{μi}`.
    pub fn vertex(&self, mu: usize, i: usize) -> usize {
        assert!((1..=self.m).contains(&mu), "cluster {mu} out of range 1..={}", self.m);
        assert!((1..=self.n).contains(&i), "position {i} out of range 1..={}", self.n);
        (mu - 1) * self.n + (i - 1)
    }

    /// `(μ, i)` of a flat index.
    pub fn label(&self, flat: usize) -> (usize, usize) {
        (flat / self.n + 1, flat % self.n + 1)
    }

    /// `w(v_{μi}, v_{νj})`, or `None` without an edge.
    pub fn weight(&self, (mu, i): (usize, usize), (nu, j): (usize, usize)) -> Option<Complex64> {
        self.graph.weight(self.vertex(mu, i), self.vertex(nu, j))
    }

    /// `w(v_{μi}, v_{νj})`, zero without an edge.
    pub fn w(&self, mu: usize, i: usize, nu: usize, j: usize) -> Complex64 {
        self.weight((mu, i), (nu, j)).unwrap_or(ZERO)
    }

    /// Weighted degree `d_{μi}` in the whole graph.
    pub fn degree(&self, mu: usize, i: usize) -> f64 {
        self.graph.out_edges(self.vertex(mu, i)).map(|(_, w)| w.norm()).sum()
    }

    /// `A_{μν}`: entry `(i, j)` is `w(v_{μi}, v_{νj})`.
    pub fn adjacency_block(&self, mu: usize, nu: usize) -> CMatrix {
        let n = self.n;
        let mut a = CMatrix::zeros(n, n);
        for i in 1..=n {
            for (k, w) in self.out_neighborhood(mu, i, nu).iter() {
                a[(i - 1, k - 1)] = w;
            }
        }
        a
    }

    /// `W(nbd_out(v_{μi}))` restricted to cluster `ν`: row `i` of `A_{μν}`.
    pub fn out_neighborhood(&self, mu: usize, i: usize, nu: usize) -> SparseVector {
        let lo = self.vertex(nu, 1);
        let hi = lo + self.n;
        SparseVector::from_sorted(
            self.graph
                .out_edges(self.vertex(mu, i))
                .filter(|&(t, _)| (lo..hi).contains(&t))
                .map(|(t, w)| (t - lo + 1, w))
                .collect(),
        )
    }

    /// `W(nbd_in(v_{νj}))` from cluster `μ`: column `j` of `A_{μν}`, i.e. the
    /// weights `w(v_{μk}, v_{νj})`.
    pub fn in_neighborhood(&self, nu: usize, j: usize, mu: usize) -> SparseVector {
        let lo = self.vertex(mu, 1);
        let hi = lo + self.n;
        // w(v_μk, v_νj) = conj(w(v_νj, v_μk))
        SparseVector::from_sorted(
            self.graph
                .out_edges(self.vertex(nu, j))
                .filter(|&(t, _)| (lo..hi).contains(&t))
                .map(|(t, w)| (t - lo + 1, w.conj()))
                .collect(),
        )
    }

    /// True when no edge joins `C_μ` to `C_ν` (or, for `μ = ν`, when `⟨C_μ⟩`
    /// has no edges, loops included).
    pub fn is_block_empty(&self, mu: usize, nu: usize) -> bool {
        (1..=self.n).all(|i| self.out_neighborhood(mu, i, nu).is_empty())
    }

    /// Blocks of the state `ρ(G)`: `s·A_{μν}/d` off the diagonal and
    /// `(D_μ + s·A_{μμ})/d` on it, with `d` the Laplacian trace.
    pub fn density_blocks(&self, kind: LaplacianKind) -> Result<BlockFamily> {
        // propagates zero-trace and positivity failures
        density::from_graph(&self.graph, kind)?;
        let trace = match kind {
            LaplacianKind::Combinatorial => self.graph.laplacian().trace(),
            LaplacianKind::Signless => self.graph.signless_laplacian().trace(),
        };
        let s = Complex64::new(kind.sign() / trace, 0.0);
        let mut blocks = Vec::with_capacity(self.m * self.m);
        for mu in 1..=self.m {
            for nu in 1..=self.m {
                let mut b = self.adjacency_block(mu, nu) * s;
                if mu == nu {
                    for i in 1..=self.n {
                        b[(i - 1, i - 1)] += self.degree(mu, i) / trace;
                    }
                }
                blocks.push(b);
            }
        }
        Ok(BlockFamily { m: self.m, n: self.n, blocks })
    }

    /// `⟨C_μ, C_ν⟩` on `2n` vertices: positions `0..n` hold `C_μ`, `n..2n` hold
    /// `C_ν`, so the adjacency is `[[0, A_{μν}], [A_{μν}†, 0]]`.
    pub fn cross_subgraph(&self, mu: usize, nu: usize) -> WeightedDigraph {
        assert_ne!(mu, nu, "cross subgraph needs two distinct clusters");
        let n = self.n;
        let mut g = WeightedDigraph::new(2 * n).expect("n > 0");
        for i in 1..=n {
            for (k, w) in self.out_neighborhood(mu, i, nu).iter() {
                g.add_edge(i - 1, n + k - 1, w).expect("weights come from a valid graph");
            }
        }
        g
    }

    /// `⟨C_μ⟩` on `n` vertices, loops included; its adjacency is `A_{μμ}`.
    pub fn induced_subgraph(&self, mu: usize) -> WeightedDigraph {
        let n = self.n;
        let mut g = WeightedDigraph::new(n).expect("n > 0");
        for i in 1..=n {
            for (k, w) in self.out_neighborhood(mu, i, mu).iter() {
                g.add_edge(i - 1, k - 1, w).expect("weights come from a valid graph");
            }
        }
        g
    }
}
