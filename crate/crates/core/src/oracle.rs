//! Matrix-level ground truth for the structural criteria.
//!
//! A bipartite state on `H_A ⊗ H_B` (dimensions `m` and `n`) is written as
//! `ρ = Σ E_ij ⊗ B_ij`. It has zero discord with respect to measurements on
//! `B` exactly when the blocks `B_ij` form a commuting normal family. The
//! entropic functions below measure in bits.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::clustering::BlockFamily;
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{commutator_norm, hermitian_eigenvalues, normality_defect, CMatrix, ZERO};
use crate::tol;

/// Which tensor factor a partial trace removes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Trace out `H_A`, keep the `n`-dimensional factor.
    First,
    /// Trace out `H_B`, keep the `m`-dimensional factor.
    Second,
}

/// Orthonormal basis of the measured factor; each vector defines a rank-1
/// projector.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBasis {
    vectors: Vec<DVector<Complex64>>,
}

impl MeasurementBasis {
    pub fn new(vectors: Vec<DVector<Complex64>>) -> Result<Self> {
        let dim = vectors.len();
        if dim == 0 {
            return Err(Error::InvalidParameter("measurement basis is empty".into()));
        }
        for v in &vectors {
            if v.len() != dim {
                return Err(Error::LengthMismatch { left: v.len(), right: dim });
            }
        }
        for (i, u) in vectors.iter().enumerate() {
            for (j, v) in vectors.iter().enumerate().skip(i) {
                let expected = if i == j { 1.0 } else { 0.0 };
                let deviation = (u.dotc(v) - expected).norm();
                if deviation > tol::DENSITY {
                    return Err(Error::NotOrthonormal { i, j, deviation });
                }
            }
        }
        Ok(Self { vectors })
    }

    pub fn computational(dim: usize) -> Self {
        let vectors = (0..dim)
            .map(|k| {
                let mut v = DVector::from_element(dim, ZERO);
                v[k] = Complex64::new(1.0, 0.0);
                v
            })
            .collect();
        Self { vectors }
    }

    /// Qubit basis along the Bloch direction `(θ, φ)` and its antipode.
    pub fn qubit(theta: f64, phi: f64) -> Self {
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let phase = Complex64::from_polar(1.0, phi);
        let up = DVector::from_vec(vec![Complex64::new(c, 0.0), phase * s]);
        let down = DVector::from_vec(vec![-phase.conj() * s, Complex64::new(c, 0.0)]);
        Self { vectors: vec![up, down] }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[DVector<Complex64>] {
        &self.vectors
    }
}

/// `B_ij` = the `(i, j)` block of `ρ` in the product basis.
pub fn blocks_of_density(rho: &DensityMatrix, m: usize, n: usize) -> Result<BlockFamily> {
    BlockFamily::from_matrix(rho.as_matrix(), m, n)
}

/// Every block normal and every pair commuting, in `‖·‖_max` below `tol`.
pub fn is_commuting_normal_family(family: &BlockFamily, tol: f64) -> bool {
    let blocks: Vec<&CMatrix> = family.iter().map(|(_, b)| b).collect();
    blocks.iter().all(|b| normality_defect(b) < tol)
        && blocks
            .iter()
            .enumerate()
            .all(|(p, a)| blocks[p + 1..].iter().all(|b| commutator_norm(a, b) < tol))
}

fn check_shape(rho: &DensityMatrix, m: usize, n: usize) -> Result<()> {
    if m == 0 || n == 0 || rho.order() != m * n {
        return Err(Error::ShapeMismatch { expected: m * n, actual: rho.order() });
    }
    Ok(())
}

fn partial_trace_matrix(rho: &CMatrix, m: usize, n: usize, side: Side) -> CMatrix {
    match side {
        Side::First => {
            let mut out = CMatrix::zeros(n, n);
            for a in 0..m {
                out += rho.view((a * n, a * n), (n, n));
            }
            out
        }
        Side::Second => CMatrix::from_fn(m, m, |a, b| {
            (0..n).map(|k| rho[(a * n + k, b * n + k)]).sum()
        }),
    }
}

/// Reduced state after tracing out one factor.
pub fn partial_trace(rho: &DensityMatrix, m: usize, n: usize, side: Side) -> Result<DensityMatrix> {
    check_shape(rho, m, n)?;
    DensityMatrix::new(partial_trace_matrix(rho.as_matrix(), m, n, side))
}

/// `−Σ λ log₂ λ` for a spectrum summing to `total`, each term rescaled so the
/// result is `total · S(spectrum / total)`.
fn weighted_entropy(eigenvalues: &[f64], total: f64) -> Result<f64> {
    let mut s = 0.0;
    for &lambda in eigenvalues {
        if lambda < -tol::DENSITY {
            return Err(Error::NotPositiveSemidefinite { eigenvalue: lambda });
        }
        let lambda = lambda.clamp(0.0, total);
        if lambda > 0.0 {
            s -= lambda * (lambda / total).log2();
        }
    }
    Ok(s)
}

/// `S(ρ) = −tr ρ log₂ ρ`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    weighted_entropy(&rho.eigenvalues(), 1.0).expect("density matrices have validated spectra")
}

/// `I(ρ) = S(ρ_A) + S(ρ_B) − S(ρ)`.
pub fn mutual_information(rho: &DensityMatrix, m: usize, n: usize) -> Result<f64> {
    check_shape(rho, m, n)?;
    let a = partial_trace(rho, m, n, Side::Second)?;
    let b = partial_trace(rho, m, n, Side::First)?;
    Ok(von_neumann_entropy(&a) + von_neumann_entropy(&b) - von_neumann_entropy(rho))
}

/// Unnormalized conditional state of `A` for outcome `b`:
/// `σ = (I ⊗ ⟨b|) ρ (I ⊗ |b⟩)`, with `tr σ = p_b`.
fn conditional_state(rho: &CMatrix, m: usize, n: usize, b: &DVector<Complex64>) -> CMatrix {
    CMatrix::from_fn(m, m, |x, y| {
        let mut acc = ZERO;
        for k in 0..n {
            for l in 0..n {
                acc += b[k].conj() * rho[(x * n + k, y * n + l)] * b[l];
            }
        }
        acc
    })
}

fn measured_entropy(rho: &CMatrix, m: usize, n: usize, basis: &MeasurementBasis) -> Result<f64> {
    let mut total = 0.0;
    for b in basis.vectors() {
        let sigma = conditional_state(rho, m, n, b);
        let p = sigma.diagonal().iter().map(|z| z.re).sum::<f64>();
        if p < tol::OUTCOME_PROBABILITY {
            continue;
        }
        total += weighted_entropy(&hermitian_eigenvalues(&sigma), p)?;
    }
    Ok(total)
}

/// `I(ρ|Π) = S(ρ_A) − Σ_k p_k S(ρ_k)` for a projective measurement on `B`.
///
/// Each post-measurement state `ρ_k` is `σ_k/p_k ⊗ |b_k⟩⟨b_k|`, so its
/// entropy is that of the conditional state `σ_k/p_k` of `A`.
pub fn conditional_information(rho: &DensityMatrix, m: usize, n: usize, basis: &MeasurementBasis) -> Result<f64> {
    check_shape(rho, m, n)?;
    if basis.dim() != n {
        return Err(Error::ShapeMismatch { expected: n, actual: basis.dim() });
    }
    let a = partial_trace(rho, m, n, Side::Second)?;
    Ok(von_neumann_entropy(&a) - measured_entropy(rho.as_matrix(), m, n, basis)?)
}

/// Grid points `(θ, φ)` covering every qubit measurement axis once:
/// `θ` spans `[0, π/2]` inclusive and `φ` spans `[0, 2π)`.
pub fn qubit_grid(resolution: usize) -> Vec<(f64, f64)> {
    let r = resolution.max(1);
    let theta_step = if r > 1 { std::f64::consts::FRAC_PI_2 / (r - 1) as f64 } else { 0.0 };
    let phi_step = std::f64::consts::TAU / r as f64;
    (0..r)
        .flat_map(|a| (0..r).map(move |b| (a as f64 * theta_step, b as f64 * phi_step)))
        .collect()
}

/// Minimum of `I(ρ) − I(ρ|Π)` over the qubit measurement grid.
///
/// An upper bound on the discord, tight up to grid granularity.
pub fn discord_estimate(rho: &DensityMatrix, m: usize, n: usize, resolution: usize) -> Result<f64> {
    if n != 2 {
        return Err(Error::InvalidParameter(format!(
            "discord estimate needs a qubit measured side, got dimension {n}"
        )));
    }
    check_shape(rho, m, n)?;
    if resolution == 0 {
        return Err(Error::InvalidParameter("grid resolution must be positive".into()));
    }
    let mutual = mutual_information(rho, m, n)?;
    let s_a = von_neumann_entropy(&partial_trace(rho, m, n, Side::Second)?);
    let mut best = f64::INFINITY;
    for (theta, phi) in qubit_grid(resolution) {
        let basis = MeasurementBasis::qubit(theta, phi);
        let classical = s_a - measured_entropy(rho.as_matrix(), m, n, &basis)?;
        best = best.min(mutual - classical);
    }
    Ok(best)
}
