//! Small dense helpers shared by the density, clustering and oracle modules.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub(crate) const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Largest entrywise modulus of `a`.
pub fn max_modulus(a: &CMatrix) -> f64 {
    a.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

/// `‖AB − BA‖_max`.
pub fn commutator_norm(a: &CMatrix, b: &CMatrix) -> f64 {
    max_modulus(&(a * b - b * a))
}

/// `‖AA† − A†A‖_max`.
pub fn normality_defect(a: &CMatrix) -> f64 {
    let ad = a.adjoint();
    max_modulus(&(a * &ad - &ad * a))
}

/// Worst Hermiticity deviation and where it occurs.
pub fn hermitian_defect(a: &CMatrix) -> (f64, usize, usize) {
    let mut worst = (0.0, 0, 0);
    for i in 0..a.nrows() {
        for j in i..a.ncols() {
            let dev = (a[(i, j)] - a[(j, i)].conj()).norm();
            if dev > worst.0 {
                worst = (dev, i, j);
            }
        }
    }
    worst
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(a: &CMatrix) -> Vec<f64> {
    if a.nrows() == 0 {
        return Vec::new();
    }
    let mut eig: Vec<f64> = a.clone().symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(|x, y| x.total_cmp(y));
    eig
}

pub fn trace(a: &CMatrix) -> Complex64 {
    a.diagonal().iter().sum()
}

/// Extract the `(bi, bj)` block of size `n×n`.
pub fn block(a: &CMatrix, bi: usize, bj: usize, n: usize) -> CMatrix {
    a.view((bi * n, bj * n), (n, n)).into_owned()
}
