//! Dense complex linear-algebra helpers.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::num::{c, cplx, Real, C};

pub type CMatrix<T> = DMatrix<C<T>>;
pub type CVector<T> = DVector<C<T>>;

/// Eigen-decomposition of a Hermitian matrix. Only the lower triangle is read.
pub fn hermitian_eigen<T: Real>(m: &CMatrix<T>) -> (DVector<T>, CMatrix<T>) {
    let eig = SymmetricEigen::new(m.clone());
    (eig.eigenvalues, eig.eigenvectors)
}

pub fn hermitian_eigenvalues<T: Real>(m: &CMatrix<T>) -> DVector<T> {
    SymmetricEigen::new(m.clone()).eigenvalues
}

/// `exp(G)` for anti-Hermitian `G`, through the eigenbasis of `iG`.
///
/// The result is unitary to working precision for any generator norm, which
/// is what the truncated bosonic generators need (their norm grows with the
/// cutoff and a plain power series loses all accuracy).
pub fn exp_anti_hermitian<T: Real>(g: &CMatrix<T>) -> CMatrix<T> {
    let i = cplx(T::zero(), T::one());
    let h = g.map(|z| z * i);
    let h = (&h + h.adjoint()) * c(T::lit(0.5));
    let (vals, vecs) = hermitian_eigen(&h);
    // exp(G) = exp(-iH) = V diag(e^{-i lambda}) V^dagger
    let mut scaled = vecs.clone();
    for (k, mut col) in scaled.column_iter_mut().enumerate() {
        let l = vals[k];
        col *= cplx(l.cos(), -l.sin());
    }
    scaled * vecs.adjoint()
}

/// `Tr(AB)` without forming the product.
pub fn trace_of_product<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> C<T> {
    let n = a.nrows();
    let mut acc = c(T::zero());
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> T {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (*x - *y).norm_sqr().sqrt())
        .fold(T::zero(), |m, v| if v > m { v } else { m })
}

/// `-sum p ln p` over the given spectrum with `0 ln 0 = 0`.
pub fn entropy_of_spectrum<T: Real>(vals: impl IntoIterator<Item = T>) -> T {
    vals.into_iter()
        .filter(|&p| p > T::zero())
        .fold(T::zero(), |s, p| s - p * p.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_zero_is_identity() {
        let z = CMatrix::<f64>::zeros(4, 4);
        let e = exp_anti_hermitian(&z);
        assert!(max_abs_diff(&e, &CMatrix::identity(4, 4)) < 1e-14);
    }

    #[test]
    fn exp_of_pauli_rotation() {
        // G = -i t X  =>  exp(G) = cos t I - i sin t X
        let t = 0.7_f64;
        let mut g = CMatrix::<f64>::zeros(2, 2);
        g[(0, 1)] = cplx(0.0, -t);
        g[(1, 0)] = cplx(0.0, -t);
        let e = exp_anti_hermitian(&g);
        assert!((e[(0, 0)] - c(t.cos())).norm() < 1e-14);
        assert!((e[(0, 1)] - cplx(0.0, -t.sin())).norm() < 1e-14);
    }

    #[test]
    fn entropy_ignores_zeros() {
        let s = entropy_of_spectrum([0.5_f64, 0.5, 0.0]);
        assert!((s - 2f64.ln()).abs() < 1e-15);
    }
}
