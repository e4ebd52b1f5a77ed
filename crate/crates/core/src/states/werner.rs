use num_complex::Complex64;

use super::{check_dimension, check_unit_interval};
use crate::clustering::ClusteredGraph;
use crate::criteria::{zero_discord_structural, CriterionReport, StructuralOptions};
use crate::density::{extract_graph, DensityMatrix, LaplacianKind};
use crate::error::Result;
use crate::linalg::CMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerParams {
    d: usize,
    x: f64,
}

impl WernerParams {
    pub fn new(d: usize, x: f64) -> Result<Self> {
        check_dimension(d)?;
        check_unit_interval("x", x)?;
        Ok(Self { d, x })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn x(&self) -> f64 {
        self.x
    }
}

/// `((d − x) I + (xd − 1) F) / (d³ − d)` with `F` the flip of the two factors.
pub fn werner_density(p: WernerParams) -> DensityMatrix {
    let (d, x) = (p.d, p.x);
    let df = d as f64;
    let norm = df * df * df - df;
    let id = (df - x) / norm;
    let flip = (x * df - 1.0) / norm;
    let m = CMatrix::from_fn(d * d, d * d, |r, c| {
        let (i, j) = (r / d, r % d);
        let (k, l) = (c / d, c % d);
        let mut v = 0.0;
        if r == c {
            v += id;
        }
        if i == l && j == k {
            v += flip;
        }
        Complex64::new(v, 0.0)
    });
    DensityMatrix::new(m).expect("Werner states are valid density matrices")
}

/// Canonical signless graph of the Werner state, clustered `(d, d)`.
pub fn werner_graph(p: WernerParams) -> Result<ClusteredGraph> {
    let g = extract_graph(&werner_density(p), LaplacianKind::Signless)?;
    ClusteredGraph::new(g, p.d, p.d)
}

pub fn werner_discord_verdict(p: WernerParams) -> Result<CriterionReport> {
    zero_discord_structural(&werner_graph(p)?, LaplacianKind::Signless, StructuralOptions::default())
}
