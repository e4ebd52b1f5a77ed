#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, TAU};

use laplacian_states::density::from_graph;
use laplacian_states::linalg::CMatrix;
use laplacian_states::oracle::MeasurementBasis;
use laplacian_states::states::{AntiDiagonalEdge, CrossBlock, DiagonalBlock, LoopWeight, XStateSpec};
use laplacian_states::{ClusteredGraph, Complex64, DensityMatrix, LaplacianKind, WeightedDigraph};
use nalgebra::{DMatrix, DVector};
use rand::rngs::StdRng;
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_weight(rng: &mut StdRng) -> Complex64 {
    Complex64::from_polar(rng.gen_range(0.1..2.0), rng.gen_range(0.0..TAU))
}

pub fn random_loop(rng: &mut StdRng) -> Complex64 {
    let magnitude = rng.gen_range(0.1..2.0);
    c(if rng.gen_bool(0.5) { magnitude } else { -magnitude }, 0.0)
}

/// Every vertex pair and every loop present with probability `density`.
pub fn random_graph(rng: &mut StdRng, order: usize, density: f64) -> WeightedDigraph {
    let mut g = WeightedDigraph::new(order).unwrap();
    for i in 0..order {
        if rng.gen_bool(density) {
            g.add_edge(i, i, random_loop(rng)).unwrap();
        }
        for j in i + 1..order {
            if rng.gen_bool(density) {
                g.add_edge(i, j, random_weight(rng)).unwrap();
            }
        }
    }
    g
}

/// Random sparse clustered graph whose state of the given kind exists.
pub fn random_clustered_graph(rng: &mut StdRng, m: usize, n: usize, density: f64, kind: LaplacianKind) -> ClusteredGraph {
    loop {
        let g = random_graph(rng, m * n, density);
        if from_graph(&g, kind).is_ok() {
            return ClusteredGraph::new(g, m, n).unwrap();
        }
    }
}

/// Diagonal cross blocks and loops only, so every density block is
/// diagonal; with probability `perturb` one extra random edge is added.
pub fn biased_clustered_graph(rng: &mut StdRng, m: usize, n: usize, perturb: f64, kind: LaplacianKind) -> ClusteredGraph {
    loop {
        let mut g = WeightedDigraph::new(m * n).unwrap();
        for mu in 0..m {
            for i in 0..n {
                if rng.gen_bool(0.5) {
                    g.add_edge(mu * n + i, mu * n + i, random_loop(rng)).unwrap();
                }
                for nu in mu + 1..m {
                    if rng.gen_bool(0.5) {
                        g.add_edge(mu * n + i, nu * n + i, random_weight(rng)).unwrap();
                    }
                }
            }
        }
        if rng.gen_bool(perturb) {
            let a = rng.gen_range(0..m * n);
            let b = rng.gen_range(0..m * n);
            let w = if a == b { random_loop(rng) } else { random_weight(rng) };
            g.add_edge(a, b, w).unwrap();
        }
        if from_graph(&g, kind).is_ok() {
            return ClusteredGraph::new(g, m, n).unwrap();
        }
    }
}

/// Sparse Hermitian off-diagonal part, diagonal equal to the row modulus sum
/// plus a slack that is zero on some rows, normalized to unit trace.
pub fn random_graphical_density(rng: &mut StdRng, order: usize) -> DensityMatrix {
    let mut m = CMatrix::zeros(order, order);
    for i in 0..order {
        for j in i + 1..order {
            if rng.gen_bool(0.4) {
                let w = random_weight(rng);
                m[(i, j)] = w;
                m[(j, i)] = w.conj();
            }
        }
    }
    for i in 0..order {
        let off: f64 = (0..order).filter(|&j| j != i).map(|j| m[(i, j)].norm()).sum();
        let slack = if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.0..1.5) };
        m[(i, i)] = c(off + slack, 0.0);
    }
    let tr: f64 = (0..order).map(|i| m[(i, i)].re).sum();
    if tr == 0.0 {
        return DensityMatrix::maximally_mixed(order).unwrap();
    }
    DensityMatrix::new(m / c(tr, 0.0)).unwrap()
}

/// `G G† / tr(G G†)` for a complex Gaussian-like `G`.
pub fn random_density(rng: &mut StdRng, order: usize) -> DensityMatrix {
    let g = CMatrix::from_fn(order, order, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let h = &g * g.adjoint();
    let tr: f64 = (0..order).map(|i| h[(i, i)].re).sum();
    DensityMatrix::new(h / c(tr, 0.0)).unwrap()
}

pub fn qubit_grid_basis(rng: &mut StdRng, resolution: usize) -> MeasurementBasis {
    let a = rng.gen_range(0..resolution);
    let b = rng.gen_range(0..resolution);
    MeasurementBasis::qubit(a as f64 * FRAC_PI_2 / (resolution - 1) as f64, b as f64 * TAU / resolution as f64)
}

/// `Σ_k p_k σ_k ⊗ |b_k⟩⟨b_k|`.
pub fn classical_quantum(rng: &mut StdRng, m: usize, basis: &MeasurementBasis) -> DensityMatrix {
    let n = basis.dim();
    let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let mut out = CMatrix::zeros(m * n, m * n);
    for (k, b) in basis.vectors().iter().enumerate() {
        let sigma = random_density(rng, m);
        let proj = b * b.adjoint();
        out += sigma.as_matrix().kronecker(&proj) * c(weights[k] / total, 0.0);
    }
    DensityMatrix::new(out).unwrap()
}

/// Eigenvalues of a Hermitian matrix through its real `2N×2N` embedding
/// `[[Re, −Im], [Im, Re]]`; each eigenvalue appears twice there.
pub fn embedded_eigenvalues(h: &CMatrix) -> Vec<f64> {
    let n = h.nrows();
    let real = DMatrix::<f64>::from_fn(2 * n, 2 * n, |r, s| {
        let z = h[(r % n, s % n)];
        match (r < n, s < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let mut ev: Vec<f64> = real.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev.into_iter().step_by(2).collect()
}

pub fn entropy_oracle(h: &CMatrix) -> f64 {
    embedded_eigenvalues(h)
        .into_iter()
        .filter(|&l| l > 1e-15)
        .map(|l| -l * l.log2())
        .sum()
}

pub fn partial_trace_oracle(rho: &CMatrix, m: usize, n: usize, keep_first: bool) -> CMatrix {
    if keep_first {
        CMatrix::from_fn(m, m, |a, b| (0..n).map(|k| rho[(a * n + k, b * n + k)]).sum())
    } else {
        CMatrix::from_fn(n, n, |k, l| (0..m).map(|a| rho[(a * n + k, a * n + l)]).sum())
    }
}

/// `I(ρ|Π)` through the full `mn×mn` sandwich `Π_k ρ Π_k / p_k`.
pub fn conditional_information_oracle(rho: &CMatrix, m: usize, n: usize, basis: &[DVector<Complex64>]) -> f64 {
    let s_a = entropy_oracle(&partial_trace_oracle(rho, m, n, true));
    let mut conditional = 0.0;
    for b in basis {
        let proj = CMatrix::identity(m, m).kronecker(&(b * b.adjoint()));
        let sandwich = &proj * rho * &proj;
        let p: f64 = (0..m * n).map(|i| sandwich[(i, i)].re).sum();
        if p < 1e-14 {
            continue;
        }
        conditional += p * entropy_oracle(&(sandwich / c(p, 0.0)));
    }
    s_a - conditional
}

pub fn mutual_information_oracle(rho: &CMatrix, m: usize, n: usize) -> f64 {
    entropy_oracle(&partial_trace_oracle(rho, m, n, true)) + entropy_oracle(&partial_trace_oracle(rho, m, n, false))
        - entropy_oracle(rho)
}

/// Dense commuting-normal test on blocks cut straight from a matrix.
pub fn dense_commuting_normal(rho: &CMatrix, m: usize, n: usize, tol: f64) -> bool {
    let blocks: Vec<CMatrix> = (0..m)
        .flat_map(|a| (0..m).map(move |b| (a, b)))
        .map(|(a, b)| rho.view((a * n, b * n), (n, n)).into_owned())
        .collect();
    let max = |x: &CMatrix| x.iter().map(|z| z.norm()).fold(0.0, f64::max);
    blocks.iter().all(|b| max(&(b * b.adjoint() - b.adjoint() * b)) < tol)
        && blocks.iter().all(|a| blocks.iter().all(|b| max(&(a * b - b * a)) < tol))
}

pub fn dense_block(g: &WeightedDigraph, n: usize, mu: usize, nu: usize) -> CMatrix {
    let a = g.adjacency_matrix();
    a.as_matrix().view(((mu - 1) * n, (nu - 1) * n), (n, n)).into_owned()
}

/// Which X-state construction a generated instance exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XBranch {
    Satisfied,
    UnequalCrossBlocks,
    AsymmetricDegrees,
}

fn hermitian_anti_diagonal(rng: &mut StdRng, n: usize) -> Vec<Complex64> {
    let mut x = vec![c(0.0, 0.0); n];
    for k in 1..=(n + 1) / 2 {
        let partner = n + 1 - k;
        if rng.gen_bool(0.25) && k != 1 {
            continue;
        }
        let w = random_weight(rng);
        if k == partner {
            x[k - 1] = c(w.re.abs().max(0.1), 0.0);
        } else {
            x[k - 1] = w;
            x[partner - 1] = w.conj();
        }
    }
    x
}

fn edges_of(x: &[Complex64]) -> Vec<AntiDiagonalEdge> {
    x.iter()
        .enumerate()
        .filter(|(_, w)| w.norm() > 0.0)
        .map(|(k, w)| AntiDiagonalEdge { k: k + 1, re: w.re, im: w.im })
        .collect()
}

/// X-state spec for one branch. The satisfied branch uses a common Hermitian
/// anti-diagonal cross block on a random set of cluster pairs, an internal
/// block `y_k = t_k x_k` with `t` symmetric and real, and loops symmetric
/// under `k ↔ n+1−k` with sign `s`.
pub fn xstate_instance(rng: &mut StdRng, branch: XBranch, kind: LaplacianKind) -> XStateSpec {
    let m = rng.gen_range(2..=4);
    let n = rng.gen_range(2..=4);
    let s = kind.sign();
    let x = hermitian_anti_diagonal(rng, n);

    let mut pairs: Vec<[usize; 2]> = (1..=m).flat_map(|a| (a + 1..=m).map(move |b| [a, b])).collect();
    pairs.retain(|_| rng.gen_bool(0.7));
    if pairs.is_empty() {
        pairs.push([1, 2]);
    }
    let mut cross_edges: Vec<CrossBlock> =
        pairs.iter().map(|&clusters| CrossBlock { clusters, edges: edges_of(&x) }).collect();

    let alpha = rng.gen_range(1..=m);
    let mut t = vec![0.0; n];
    for k in 1..=(n + 1) / 2 {
        let v = if rng.gen_bool(0.5) { rng.gen_range(-2.0..2.0) } else { 0.0 };
        t[k - 1] = v;
        t[n - k] = v;
    }
    if n % 2 == 1 {
        // the middle entry is a loop, which the loop list already covers
        t[n / 2] = 0.0;
    }
    let y: Vec<Complex64> = (0..n).map(|k| x[k] * t[k]).collect();
    let diag_clusters = vec![DiagonalBlock { cluster: alpha, edges: edges_of(&y) }];

    let mut loops = Vec::new();
    for mu in 1..=m {
        for k in 1..=(n + 1) / 2 {
            if rng.gen_bool(0.5) {
                let w = s * rng.gen_range(0.1..2.0);
                loops.push(LoopWeight { cluster: mu, vertex: k, weight: w });
                if n + 1 - k != k {
                    loops.push(LoopWeight { cluster: mu, vertex: n + 1 - k, weight: w });
                }
            }
        }
    }

    match branch {
        XBranch::Satisfied => {}
        XBranch::UnequalCrossBlocks => {
            let mut z = x.clone();
            let phase = Complex64::from_polar(1.0, rng.gen_range(1.0..2.0));
            if m == 2 || rng.gen_bool(0.5) {
                // |z_1| ≠ |z_n|: the block is not normal and differs from its adjoint
                z[0] *= rng.gen_range(1.5..3.0) * phase;
                cross_edges = vec![CrossBlock { clusters: [1, 2], edges: edges_of(&z) }];
            } else {
                // Hermitian but with z_1·conj(x_1) not real, so z and x do not commute
                z[0] *= phase;
                z[n - 1] = z[0].conj();
                let other = if rng.gen_bool(0.5) { [1, 3] } else { [2, 3] };
                cross_edges = vec![
                    CrossBlock { clusters: [1, 2], edges: edges_of(&x) },
                    CrossBlock { clusters: other, edges: edges_of(&z) },
                ];
            }
        }
        XBranch::AsymmetricDegrees => {
            let k = (1..=n).find(|&k| x[k - 1].norm() > 0.0).unwrap();
            let mu = cross_edges[0].clusters[0];
            let bump = s * rng.gen_range(0.2..1.0);
            match loops.iter_mut().find(|l| l.cluster == mu && l.vertex == k) {
                Some(l) => l.weight += bump,
                None => loops.push(LoopWeight { cluster: mu, vertex: k, weight: bump }),
            }
        }
    }
    XStateSpec { m, n, cross_edges, diag_clusters, loops }
}
