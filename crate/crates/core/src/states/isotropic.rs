use num_complex::Complex64;

use super::{check_dimension, check_unit_interval};
use crate::clustering::ClusteredGraph;
use crate::criteria::{zero_discord_structural, CriterionReport, StructuralOptions};
use crate::density::{extract_graph, DensityMatrix, LaplacianKind};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicParams {
    d: usize,
    fidelity: f64,
}

impl IsotropicParams {
    pub fn new(d: usize, fidelity: f64) -> Result<Self> {
        check_dimension(d)?;
        check_unit_interval("fidelity", fidelity)?;
        Ok(Self { d, fidelity })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn fidelity(&self) -> f64 {
        self.fidelity
    }
}

/// `d²/(d² − 1) [ (1 − F)/d² I + (F − 1/d²) |ψ⟩⟨ψ| ]` with
/// `|ψ⟩ = Σ_i |ii⟩ / √d`.
pub fn isotropic_density(p: IsotropicParams) -> DensityMatrix {
    let d = p.d;
    let df = d as f64;
    let d2 = df * df;
    let scale = d2 / (d2 - 1.0);
    let id = scale * (1.0 - p.fidelity) / d2;
    let proj = scale * (p.fidelity - 1.0 / d2) / df;
    let m = CMatrix::from_fn(d * d, d * d, |r, c| {
        let mut v = if r == c { id } else { 0.0 };
        if r % (d + 1) == 0 && c % (d + 1) == 0 {
            v += proj;
        }
        Complex64::new(v, 0.0)
    });
    DensityMatrix::new(m).expect("isotropic states are valid density matrices")
}

/// Solution set of `(d − 1)|F − 1/d²| ≤ (d² − 1)F/d²`:
/// `[1/(d² + d + 1), min(1, 1/(d² − d − 1))]`.
///
/// This is the dominance condition for the unnormalized projector
/// `Σ|ii⟩⟨jj|` and gates [`isotropic_graph`]. The exact graphical interval
/// of [`isotropic_density`] is [`isotropic_diagonal_dominance_range`].
pub fn isotropic_graphical_range(d: usize) -> Result<(f64, f64)> {
    check_dimension(d)?;
    let df = d as f64;
    let lo = 1.0 / (df * df + df + 1.0);
    let hi = (1.0 / (df * df - df - 1.0)).min(1.0);
    Ok((lo, hi))
}

/// Exact interval on which [`isotropic_density`] is diagonally dominant:
/// `[0, min(1, 2/(d(d − 1)))]`.
pub fn isotropic_diagonal_dominance_range(d: usize) -> Result<(f64, f64)> {
    check_dimension(d)?;
    let df = d as f64;
    Ok((0.0, (2.0 / (df * (df - 1.0))).min(1.0)))
}

/// Canonical signless graph, clustered `(d, d)`. The fidelity must lie in
/// [`isotropic_graphical_range`].
pub fn isotropic_graph(p: IsotropicParams) -> Result<ClusteredGraph> {
    let (lo, hi) = isotropic_graphical_range(p.d)?;
    if p.fidelity < lo || p.fidelity > hi {
        return Err(Error::InvalidParameter(format!(
            "fidelity {} outside the graphical range [{lo}, {hi}] for d = {}",
            p.fidelity, p.d
        )));
    }
    let g = extract_graph(&isotropic_density(p), LaplacianKind::Signless)?;
    ClusteredGraph::new(g, p.d, p.d)
}

pub fn isotropic_discord_verdict(p: IsotropicParams) -> Result<CriterionReport> {
    zero_discord_structural(&isotropic_graph(p)?, LaplacianKind::Signless, StructuralOptions::default())
}
