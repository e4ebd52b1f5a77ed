//! Structural zero-discord decision for clustered graph states.
//!
//! The blocks of `ρ(G)` form a commuting normal family exactly when
//!
//! 1. every pair of cross blocks `A_{μν}`, `A_{αβ}` commutes,
//! 2. every cross block is normal,
//! 3. (a) every pair of diagonal blocks `D_μ + sA_{μμ}`, `D_ν + sA_{νν}`
//!    commutes, and (b) every diagonal block commutes with every cross block.
//!
//! Each condition is evaluated entrywise from graph neighborhoods: entry
//! `(i, j)` of `A_{μν}·A_{αβ}` is the support product of the outgoing
//! neighborhood of `v_{μi}` into `C_ν` with the incoming neighborhood of
//! `v_{βj}` from `C_α`. No dense matrix product is formed here.

use num_complex::Complex64;
use serde::Serialize;

use crate::clustering::ClusteredGraph;
use crate::density::{self, LaplacianKind};
use crate::error::Result;
use crate::linalg::ZERO;
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Commutativity,
    Normality,
    DegreeA,
    DegreeB,
}

/// One failing `(i, j)` entry of one condition. Positions and clusters are
/// 1-based; `clusters` lists the tuple the condition was evaluated on
/// (`[μ, ν, α, β]`, `[μ, ν]` or `[μ, α, β]`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub clusters: Vec<usize>,
    pub i: usize,
    pub j: usize,
    #[serde(with = "crate::io::complex_object")]
    pub lhs: Complex64,
    #[serde(with = "crate::io::complex_object")]
    pub rhs: Complex64,
}

impl Violation {
    pub fn defect(&self) -> f64 {
        (self.lhs - self.rhs).norm()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub verdict: bool,
    pub kind: LaplacianKind,
    pub failures: Vec<Violation>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructuralOptions {
    pub tol: f64,
    pub fail_fast: bool,
}

impl Default for StructuralOptions {
    fn default() -> Self {
        Self { tol: tol::STRUCTURAL, fail_fast: false }
    }
}

impl StructuralOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }
}

/// `(A_{μν}·A_{αβ})_{ij} = ⟨W(nbd_out(v_{μi})), W(nbd_in(v_{βj}))⟩`.
///
/// Diagonal blocks are the `μ = ν` case.
pub fn block_product_entry(
    cg: &ClusteredGraph,
    (mu, nu): (usize, usize),
    (alpha, beta): (usize, usize),
    i: usize,
    j: usize,
) -> Complex64 {
    cg.out_neighborhood(mu, i, nu).product(&cg.in_neighborhood(beta, j, alpha))
}

/// Both sides of the cross-block commutativity identity at `(i, j)`:
/// `(A_{μν}A_{αβ})_{ij}` and `(A_{αβ}A_{μν})_{ij}`.
pub fn commutativity_sums(
    cg: &ClusteredGraph,
    first: (usize, usize),
    second: (usize, usize),
    i: usize,
    j: usize,
) -> (Complex64, Complex64) {
    (block_product_entry(cg, first, second, i, j), block_product_entry(cg, second, first, i, j))
}

/// `(A_{μμ}A_{αβ})_{ij}` and `(A_{αβ}A_{μμ})_{ij}`.
pub fn diag_cross_sums(
    cg: &ClusteredGraph,
    mu: usize,
    cross: (usize, usize),
    i: usize,
    j: usize,
) -> (Complex64, Complex64) {
    commutativity_sums(cg, (mu, mu), cross, i, j)
}

/// `(A_{μμ}A_{νν})_{ij}` and `(A_{νν}A_{μμ})_{ij}`.
pub fn diag_diag_sums(cg: &ClusteredGraph, mu: usize, nu: usize, i: usize, j: usize) -> (Complex64, Complex64) {
    commutativity_sums(cg, (mu, mu), (nu, nu), i, j)
}

/// `(A A†)_{ij}` and `(A† A)_{ij}` for `A = A_{μν}`, using `A† = A_{νμ}`.
pub fn normality_sums(cg: &ClusteredGraph, mu: usize, nu: usize, i: usize, j: usize) -> (Complex64, Complex64) {
    commutativity_sums(cg, (mu, nu), (nu, mu), i, j)
}

fn sweep<F>(n: usize, tol: f64, condition: Condition, clusters: Vec<usize>, mut sides: F) -> Vec<Violation>
where
    F: FnMut(usize, usize) -> (Complex64, Complex64),
{
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let (lhs, rhs) = sides(i, j);
            if (lhs - rhs).norm() > tol {
                out.push(Violation { condition, clusters: clusters.clone(), i, j, lhs, rhs });
            }
        }
    }
    out
}

fn blocks_equal(cg: &ClusteredGraph, a: (usize, usize), b: (usize, usize)) -> bool {
    let n = cg.cluster_size();
    (1..=n).all(|i| {
        (1..=n).all(|j| (cg.w(a.0, i, a.1, j) - cg.w(b.0, i, b.1, j)).norm() <= tol::ZERO_WEIGHT)
    })
}

fn cluster_degrees(cg: &ClusteredGraph, mu: usize) -> Vec<f64> {
    (1..=cg.cluster_size()).map(|i| cg.degree(mu, i)).collect()
}

/// Commutativity of `A_{μν}` and `A_{αβ}`. Equal or empty blocks commute
/// without evaluation.
pub fn check_cross_commutativity(
    cg: &ClusteredGraph,
    (mu, nu): (usize, usize),
    (alpha, beta): (usize, usize),
    tol: f64,
) -> Vec<Violation> {
    assert!(mu != nu && alpha != beta, "cross blocks need distinct clusters");
    if cg.is_block_empty(mu, nu) || cg.is_block_empty(alpha, beta) || blocks_equal(cg, (mu, nu), (alpha, beta)) {
        return Vec::new();
    }
    sweep(cg.cluster_size(), tol, Condition::Commutativity, vec![mu, nu, alpha, beta], |i, j| {
        commutativity_sums(cg, (mu, nu), (alpha, beta), i, j)
    })
}

/// Commutativity of the Hermitian block `A_{μμ}` with `A_{αβ}`.
pub fn check_diag_cross_commutativity(
    cg: &ClusteredGraph,
    mu: usize,
    (alpha, beta): (usize, usize),
    tol: f64,
) -> Vec<Violation> {
    assert_ne!(alpha, beta, "cross block needs distinct clusters");
    if cg.is_block_empty(mu, mu) || cg.is_block_empty(alpha, beta) {
        return Vec::new();
    }
    sweep(cg.cluster_size(), tol, Condition::Commutativity, vec![mu, mu, alpha, beta], |i, j| {
        diag_cross_sums(cg, mu, (alpha, beta), i, j)
    })
}

/// Commutativity of `A_{μμ}` and `A_{νν}`.
pub fn check_diag_diag_commutativity(cg: &ClusteredGraph, mu: usize, nu: usize, tol: f64) -> Vec<Violation> {
    assert_ne!(mu, nu, "diagonal pair needs distinct clusters");
    if cg.is_block_empty(mu, mu) || cg.is_block_empty(nu, nu) {
        return Vec::new();
    }
    sweep(cg.cluster_size(), tol, Condition::Commutativity, vec![mu, mu, nu, nu], |i, j| {
        diag_diag_sums(cg, mu, nu, i, j)
    })
}

/// Normality of `A_{μν}`.
pub fn check_normality(cg: &ClusteredGraph, mu: usize, nu: usize, tol: f64) -> Vec<Violation> {
    assert_ne!(mu, nu, "cross block needs distinct clusters");
    if cg.is_block_empty(mu, nu) {
        return Vec::new();
    }
    sweep(cg.cluster_size(), tol, Condition::Normality, vec![mu, nu], |i, j| normality_sums(cg, mu, nu, i, j))
}

/// Commutativity of the density blocks `B_{μμ}` and `B_{νν}`:
///
/// `s·[w(v_{νi},v_{νj})(d_{μi} − d_{μj}) + w(v_{μi},v_{μj})(d_{νj} − d_{νi})]
///  + (A_{μμ}A_{νν})_{ij} = (A_{νν}A_{μμ})_{ij}`.
pub fn check_degree_condition_a(
    cg: &ClusteredGraph,
    kind: LaplacianKind,
    mu: usize,
    nu: usize,
    tol: f64,
) -> Vec<Violation> {
    assert_ne!(mu, nu, "diagonal pair needs distinct clusters");
    let s = kind.sign();
    let (dmu, dnu) = (cluster_degrees(cg, mu), cluster_degrees(cg, nu));
    sweep(cg.cluster_size(), tol, Condition::DegreeA, vec![mu, nu], |i, j| {
        let bracket = cg.w(nu, i, nu, j) * (dmu[i - 1] - dmu[j - 1]) + cg.w(mu, i, mu, j) * (dnu[j - 1] - dnu[i - 1]);
        let (p, q) = diag_diag_sums(cg, mu, nu, i, j);
        (bracket * s + p, q)
    })
}

/// Commutativity of `B_{μμ}` with the cross block `B_{αβ}`:
///
/// `w(v_{αi},v_{βj})(d_{μi} − d_{μj}) + s·(A_{μμ}A_{αβ})_{ij} = s·(A_{αβ}A_{μμ})_{ij}`.
pub fn check_degree_condition_b(
    cg: &ClusteredGraph,
    kind: LaplacianKind,
    mu: usize,
    (alpha, beta): (usize, usize),
    tol: f64,
) -> Vec<Violation> {
    assert_ne!(alpha, beta, "cross block needs distinct clusters");
    if cg.is_block_empty(alpha, beta) {
        return Vec::new();
    }
    let s = kind.sign();
    let dmu = cluster_degrees(cg, mu);
    sweep(cg.cluster_size(), tol, Condition::DegreeB, vec![mu, alpha, beta], |i, j| {
        let (p, q) = diag_cross_sums(cg, mu, (alpha, beta), i, j);
        (cg.w(alpha, i, beta, j) * (dmu[i - 1] - dmu[j - 1]) + p * s, q * s)
    })
}

/// Reduced form of condition (a) once `A_{μμ}` and `A_{νν}` commute:
/// `w(v_{νi},v_{νj})(d_{μi} − d_{μj}) + w(v_{μi},v_{μj})(d_{νj} − d_{νi}) = 0`.
pub fn check_degree_condition_a_reduced(cg: &ClusteredGraph, mu: usize, nu: usize, tol: f64) -> Vec<Violation> {
    let (dmu, dnu) = (cluster_degrees(cg, mu), cluster_degrees(cg, nu));
    sweep(cg.cluster_size(), tol, Condition::DegreeA, vec![mu, nu], |i, j| {
        let lhs = cg.w(nu, i, nu, j) * (dmu[i - 1] - dmu[j - 1]) + cg.w(mu, i, mu, j) * (dnu[j - 1] - dnu[i - 1]);
        (lhs, ZERO)
    })
}

/// Reduced form of condition (b) once `A_{μμ}` and `A_{αβ}` commute:
/// `w(v_{αi},v_{βj})(d_{μi} − d_{μj}) = 0`.
pub fn check_degree_condition_b_reduced(
    cg: &ClusteredGraph,
    mu: usize,
    (alpha, beta): (usize, usize),
    tol: f64,
) -> Vec<Violation> {
    let dmu = cluster_degrees(cg, mu);
    sweep(cg.cluster_size(), tol, Condition::DegreeB, vec![mu, alpha, beta], |i, j| {
        (cg.w(alpha, i, beta, j) * (dmu[i - 1] - dmu[j - 1]), ZERO)
    })
}

/// Ordered pairs `(μ, ν)` with `μ ≠ ν`.
fn cross_pairs(m: usize) -> Vec<(usize, usize)> {
    (1..=m).flat_map(|mu| (1..=m).filter(move |&nu| nu != mu).map(move |nu| (mu, nu))).collect()
}

/// Runs every condition over every relevant cluster tuple.
///
/// Order: normality, cross commutativity, degree (a), degree (b). With
/// `fail_fast` the sweep stops at the first violation.
pub fn zero_discord_structural(
    cg: &ClusteredGraph,
    kind: LaplacianKind,
    opts: StructuralOptions,
) -> Result<CriterionReport> {
    density::from_graph(cg.graph(), kind)?;
    let m = cg.clusters();
    let tol = opts.tol;
    let pairs = cross_pairs(m);

    let mut checks: Vec<Box<dyn Fn() -> Vec<Violation> + '_>> = Vec::new();
    for &(mu, nu) in pairs.iter().filter(|(mu, nu)| mu < nu) {
        checks.push(Box::new(move || check_normality(cg, mu, nu, tol)));
    }
    for (p, &first) in pairs.iter().enumerate() {
        for &second in &pairs[p + 1..] {
            checks.push(Box::new(move || check_cross_commutativity(cg, first, second, tol)));
        }
    }
    for mu in 1..=m {
        for nu in mu + 1..=m {
            checks.push(Box::new(move || check_degree_condition_a(cg, kind, mu, nu, tol)));
        }
    }
    for mu in 1..=m {
        for &cross in &pairs {
            checks.push(Box::new(move || check_degree_condition_b(cg, kind, mu, cross, tol)));
        }
    }

    let mut failures = Vec::new();
    for check in checks {
        let found = check();
        if opts.fail_fast && !found.is_empty() {
            failures.push(found.into_iter().next().expect("non-empty"));
            break;
        }
        failures.extend(found);
    }
    Ok(CriterionReport { verdict: failures.is_empty(), kind, failures })
}
