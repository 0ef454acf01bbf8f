//! Dense complex linear-algebra helpers on `nalgebra::DMatrix<Complex64>`.

use nalgebra::{DMatrix, DVector};

use crate::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn real(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b + b * a
}

/// Frobenius norm.
pub fn norm(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entry modulus.
pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `‖A − A†‖_F`.
pub fn hermiticity_defect(a: &CMatrix) -> f64 {
    norm(&(a - a.adjoint()))
}

/// Eigen-decomposition of a Hermitian matrix with eigenvalues in ascending order.
pub fn eigh(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    // symmetrize away rounding so the solver sees an exactly Hermitian input
    let sym = (a + a.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let n = a.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, k| eig.eigenvectors[(r, order[k])]);
    (values, vectors)
}

pub fn eigvalsh(a: &CMatrix) -> Vec<f64> {
    eigh(a).0
}

/// `⟨ψ|A|ψ⟩`.
pub fn expectation(a: &CMatrix, psi: &CVector) -> Complex64 {
    psi.dotc(&(a * psi))
}

/// Rank by singular values above `tol · σ_max`.
pub fn rank(a: &CMatrix, tol: f64) -> usize {
    let sv = a.clone().svd(false, false).singular_values;
    let max = sv.max();
    sv.iter().filter(|&&s| s > tol * max.max(f64::MIN_POSITIVE)).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigh_sorts_and_reconstructs() {
        let a = CMatrix::from_row_slice(
            3,
            3,
            &[real(2.0), c(0.0, 1.0), ZERO, c(0.0, -1.0), real(-1.0), real(0.5), ZERO, real(0.5), real(3.0)],
        );
        let (vals, vecs) = eigh(&a);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        let diag = CMatrix::from_diagonal(&CVector::from_iterator(3, vals.iter().map(|&x| real(x))));
        let back = &vecs * diag * vecs.adjoint();
        assert!(norm(&(back - a)) < 1e-13);
    }

    #[test]
    fn rank_of_projector() {
        let p = CMatrix::from_diagonal(&CVector::from_vec(vec![ONE, ZERO, ONE]));
        assert_eq!(rank(&p, 1e-12), 2);
    }
}
