//! Weighted digraphs with Hermitian-symmetric complex weights.
//!
//! Every stored edge `(i, j)` has a partner `(j, i)` carrying the complex
//! conjugate weight, and loops carry real weights. These two rules make the
//! adjacency matrix Hermitian by construction.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_defect, hermitian_eigenvalues, CMatrix, ZERO};
use crate::tol;

/// A Hermitian complex square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    /// Validates Hermiticity within `tol` (absolute, entrywise).
    pub fn try_new(matrix: CMatrix, tol: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.nrows(), cols: matrix.ncols() });
        }
        let (deviation, row, col) = hermitian_defect(&matrix);
        if deviation > tol {
            return Err(Error::NotHermitian { row, col, deviation });
        }
        Ok(Self(matrix))
    }

    pub(crate) fn new_unchecked(matrix: CMatrix) -> Self {
        Self(matrix)
    }

    pub fn order(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_inner(self) -> CMatrix {
        self.0
    }

    /// Ascending real eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.0)
    }

    pub fn trace(&self) -> f64 {
        self.0.diagonal().iter().map(|z| z.re).sum()
    }
}

/// A weighted digraph on vertices `0..N` satisfying the conjugate-pair and
/// real-loop assumptions.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph {
    order: usize,
    edges: BTreeMap<(usize, usize), Complex64>,
}

impl WeightedDigraph {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptyVertexSet);
        }
        Ok(Self { order, edges: BTreeMap::new() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Inserts `(i, j)` with weight `w` and `(j, i)` with `conj(w)`, replacing
    /// any existing pair.
    pub fn add_edge(&mut self, i: usize, j: usize, w: Complex64) -> Result<()> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if !(w.re.is_finite() && w.im.is_finite()) {
            return Err(Error::NonFiniteWeight { from: i, to: j });
        }
        if w == ZERO {
            return Err(Error::ZeroWeight { from: i, to: j });
        }
        if i == j && w.im != 0.0 {
            return Err(Error::ComplexLoop { vertex: i, im: w.im });
        }
        self.edges.insert((i, j), w);
        self.edges.insert((j, i), w.conj());
        Ok(())
    }

    /// Builder form of [`add_edge`](Self::add_edge).
    pub fn with_edge(mut self, i: usize, j: usize, w: Complex64) -> Result<Self> {
        self.add_edge(i, j, w)?;
        Ok(self)
    }

    /// Inserts a computed weight, silently skipping values within the
    /// zero-weight threshold.
    pub(crate) fn add_computed_edge(&mut self, i: usize, j: usize, w: Complex64) -> Result<()> {
        if w.norm() <= tol::ZERO_WEIGHT {
            return Ok(());
        }
        let w = if i == j { Complex64::new(w.re, 0.0) } else { w };
        self.add_edge(i, j, w)
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<Complex64> {
        self.edges.get(&(i, j)).copied()
    }

    /// All stored directed edges, both orientations, in `(from, to)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.edges.iter().map(|(&(i, j), &w)| (i, j, w))
    }

    /// Each conjugate pair once (`from <= to`), loops included.
    pub fn undirected_edges(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.edges().filter(|&(i, j, _)| i <= j)
    }

    /// Outgoing edges `(j, w(i, j))` of vertex `i`, ascending in `j`.
    pub fn out_edges(&self, i: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.edges.range((i, 0)..(i + 1, 0)).map(|(&(_, j), &w)| (j, w))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn adjacency_matrix(&self) -> HermitianMatrix {
        let mut a = CMatrix::zeros(self.order, self.order);
        for (&(i, j), &w) in &self.edges {
            a[(i, j)] = w;
        }
        HermitianMatrix::new_unchecked(a)
    }

    /// Weighted degree `Σ_j |a_ij|`; a loop counts once.
    pub fn degree(&self, i: usize) -> Result<f64> {
        self.check_vertex(i)?;
        Ok(self.edges.range((i, 0)..(i + 1, 0)).map(|(_, w)| w.norm()).sum())
    }

    pub fn degrees(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.order];
        for (&(i, _), w) in &self.edges {
            d[i] += w.norm();
        }
        d
    }

    /// `L = D − A`.
    pub fn laplacian(&self) -> HermitianMatrix {
        self.degree_shifted(-1.0)
    }

    /// `Q = D + A`.
    pub fn signless_laplacian(&self) -> HermitianMatrix {
        self.degree_shifted(1.0)
    }

    fn degree_shifted(&self, sign: f64) -> HermitianMatrix {
        let mut m = self.adjacency_matrix().into_inner() * Complex64::new(sign, 0.0);
        for (i, d) in self.degrees().into_iter().enumerate() {
            m[(i, i)] += d;
        }
        HermitianMatrix::new_unchecked(m)
    }

    /// Labeled equality: same order, same edge set, weights equal within
    /// `tol` componentwise.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.order == other.order
            && self.edges.len() == other.edges.len()
            && self.edges.iter().all(|(k, w)| {
                other
                    .edges
                    .get(k)
                    .is_some_and(|v| (w.re - v.re).abs() <= tol && (w.im - v.im).abs() <= tol)
            })
    }

    /// Smallest eigenvalue of `Q`, useful as a positivity diagnostic.
    pub fn min_signless_eigenvalue(&self) -> f64 {
        hermitian_eigenvalues(self.signless_laplacian().as_matrix())[0]
    }

    fn check_vertex(&self, i: usize) -> Result<()> {
        if i >= self.order {
            return Err(Error::VertexOutOfRange { index: i, order: self.order });
        }
        Ok(())
    }
}
