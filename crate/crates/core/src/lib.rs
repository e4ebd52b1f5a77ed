//! Graph Laplacian quantum states.
//!
//! A weighted digraph with Hermitian-symmetric complex edge weights defines
//! two density matrices, `L/tr L` and `Q/tr Q`. This crate builds those states,
//! decides whether an arbitrary density matrix comes from a graph, and decides
//! zero quantum discord from the structure of an `m`-cluster partition of the
//! graph. A dense matrix oracle provides the ground truth the structural
//! criteria are checked against.
//!
//! Module map:
//!
//! - [`graph`]: digraphs, adjacency, degree, Laplacian and signless Laplacian.
//! - [`density`]: density matrices from graphs, graphicality test, extraction.
//! - [`clustering`]: cluster blocks, subgraphs and the support algebra.
//! - [`criteria`]: the structural commuting-normal-family decision.
//! - [`oracle`]: block families, entropies and a qubit discord estimate.
//! - [`states`]: Werner, isotropic and X-state generators.
//! - [`io`]: JSON formats, canonical float formatting and DOT export.

pub mod clustering;
pub mod criteria;
pub mod density;
pub mod error;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod states;

pub use clustering::{BlockFamily, ClusteredGraph, IndexSet, SparseVector};
pub use criteria::{Condition, CriterionReport, StructuralOptions, Violation};
pub use density::{DensityMatrix, LaplacianKind};
pub use error::{Error, Result};
pub use graph::{HermitianMatrix, WeightedDigraph};
pub use num_complex::Complex64;

/// Absolute tolerances used across the crate.
pub mod tol {
    /// Computed weights and vector entries at or below this modulus count as zero.
    pub const ZERO_WEIGHT: f64 = 1e-12;
    /// Hermiticity, positivity and trace checks on density matrices.
    pub const DENSITY: f64 = 1e-10;
    /// Slack on the diagonal-dominance margin of the graphicality test.
    pub const GRAPHICAL_MARGIN: f64 = 1e-12;
    /// Default tolerance for structural neighborhood-sum comparisons.
    pub const STRUCTURAL: f64 = 1e-9;
    /// Measurement outcomes with smaller probability contribute nothing.
    pub const OUTCOME_PROBABILITY: f64 = 1e-14;
}
