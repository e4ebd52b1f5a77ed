//! Density matrices and their graph representations.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use crate::linalg::{hermitian_defect, hermitian_eigenvalues, trace, CMatrix};
use crate::tol;

/// Which Laplacian a graph state is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LaplacianKind {
    /// `L = D − A`, sign `s = −1`.
    #[serde(rename = "laplacian")]
    Combinatorial,
    /// `Q = D + A`, sign `s = +1`.
    Signless,
}

impl LaplacianKind {
    pub fn sign(self) -> f64 {
        match self {
            LaplacianKind::Combinatorial => -1.0,
            LaplacianKind::Signless => 1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LaplacianKind::Combinatorial => "laplacian",
            LaplacianKind::Signless => "signless",
        }
    }

    pub const ALL: [LaplacianKind; 2] = [LaplacianKind::Combinatorial, LaplacianKind::Signless];
}

impl fmt::Display for LaplacianKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LaplacianKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "laplacian" | "combinatorial" => Ok(LaplacianKind::Combinatorial),
            "signless" => Ok(LaplacianKind::Signless),
            other => Err(Error::InvalidParameter(format!("unknown Laplacian kind `{other}`"))),
        }
    }
}

/// A Hermitian, positive semidefinite, unit-trace complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(CMatrix);

impl DensityMatrix {
    /// Validates all three invariants at tolerance [`tol::DENSITY`].
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.nrows(), cols: matrix.ncols() });
        }
        if matrix.nrows() == 0 {
            return Err(Error::EmptyVertexSet);
        }
        let (deviation, row, col) = hermitian_defect(&matrix);
        if deviation > tol::DENSITY {
            return Err(Error::NotHermitian { row, col, deviation });
        }
        let tr = trace(&matrix).re;
        if (tr - 1.0).abs() > tol::DENSITY {
            return Err(Error::TraceNotUnit { trace: tr });
        }
        let lowest = hermitian_eigenvalues(&matrix)[0];
        if lowest < -tol::DENSITY {
            return Err(Error::NotPositiveSemidefinite { eigenvalue: lowest });
        }
        Ok(Self(matrix))
    }

    /// `I/N`.
    pub fn maximally_mixed(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptyVertexSet);
        }
        Ok(Self(CMatrix::identity(order, order) / Complex64::new(order as f64, 0.0)))
    }

    /// `|ψ⟩⟨ψ|` for the normalized `psi`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if psi.is_empty() || norm == 0.0 {
            return Err(Error::InvalidParameter("pure state needs a non-zero vector".into()));
        }
        let v = nalgebra::DVector::from_iterator(psi.len(), psi.iter().map(|z| z / norm));
        Self::new(&v * v.adjoint())
    }

    /// `self ⊗ other`.
    pub fn kron(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix(self.0.kronecker(&other.0))
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

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.0)
    }

    /// Largest entrywise distance to `other`; `INFINITY` on order mismatch.
    pub fn max_deviation(&self, other: &DensityMatrix) -> f64 {
        if self.order() != other.order() {
            return f64::INFINITY;
        }
        crate::linalg::max_modulus(&(&self.0 - &other.0))
    }
}

/// `M / tr M` for `M = L(G)` or `Q(G)`.
pub fn from_graph(graph: &WeightedDigraph, kind: LaplacianKind) -> Result<DensityMatrix> {
    let m = match kind {
        LaplacianKind::Combinatorial => graph.laplacian(),
        LaplacianKind::Signless => graph.signless_laplacian(),
    };
    let tr = m.trace();
    if tr <= tol::ZERO_WEIGHT {
        return Err(Error::ZeroTrace);
    }
    DensityMatrix::new(m.into_inner() / Complex64::new(tr, 0.0))
}

/// Per-row margin `ρ_ii − Σ_{j≠i} |ρ_ij|`.
pub fn dominance_margins(rho: &DensityMatrix) -> Vec<f64> {
    let m = rho.as_matrix();
    (0..m.nrows())
        .map(|i| {
            let off: f64 = (0..m.ncols()).filter(|&j| j != i).map(|j| m[(i, j)].norm()).sum();
            m[(i, i)].re - off
        })
        .collect()
}

/// Diagonal dominance with moduli, the exact condition for a density matrix
/// to be a graph Laplacian state.
pub fn is_graphical(rho: &DensityMatrix) -> bool {
    dominance_margins(rho).iter().all(|&m| m >= -tol::GRAPHICAL_MARGIN)
}

/// First row breaking diagonal dominance, if any.
pub fn graphicality_defect(rho: &DensityMatrix) -> Option<Error> {
    let m = rho.as_matrix();
    dominance_margins(rho)
        .iter()
        .position(|&margin| margin < -tol::GRAPHICAL_MARGIN)
        .map(|row| {
            let diagonal = m[(row, row)].re;
            let margin = dominance_margins(rho)[row];
            Error::NotGraphical { row, diagonal, off_diagonal: diagonal - margin }
        })
}

/// Canonical graph `G` with `from_graph(G, kind) = rho`.
///
/// Off-diagonal entries become edges `s·ρ_ij`. The leftover diagonal margin
/// becomes a loop of modulus `margin/2` whose sign makes `s·w(i,i) > 0`, so the
/// loop contributes `2|w(i,i)|` to the diagonal of `D + sA`.
pub fn extract_graph(rho: &DensityMatrix, kind: LaplacianKind) -> Result<WeightedDigraph> {
    if let Some(err) = graphicality_defect(rho) {
        return Err(err);
    }
    let s = kind.sign();
    let m = rho.as_matrix();
    let n = m.nrows();
    let mut g = WeightedDigraph::new(n)?;
    for i in 0..n {
        let mut kept = 0.0;
        for j in 0..n {
            if i == j || m[(i, j)].norm() <= tol::ZERO_WEIGHT {
                continue;
            }
            kept += m[(i, j)].norm();
            if i < j {
                g.add_computed_edge(i, j, m[(i, j)] * s)?;
            }
        }
        let margin = m[(i, i)].re - kept;
        if margin > tol::GRAPHICAL_MARGIN {
            g.add_computed_edge(i, i, Complex64::new(s * margin / 2.0, 0.0))?;
        }
    }
    Ok(g)
}
