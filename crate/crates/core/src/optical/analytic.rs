//! Closed forms for the optical equivalence and entanglement tests.
//!
//! Functions with a `_printed` suffix evaluate expressions exactly as they
//! are usually quoted; they are kept for comparison against the numerics and
//! are not all correct.

use crate::num::Real;

/// `[2 + 2 e^{-2|a|^2} cos phi]^{-1/2}` for `N(|a> + e^{i phi}|-a>)`.
pub fn cat_normalization<T: Real>(alpha_abs: T, phi: T) -> T {
    let two = T::lit(2.0);
    (two + two * (-two * alpha_abs * alpha_abs).exp() * phi.cos()).sqrt().recip()
}

/// Normalization of the squeezed cat `N(|a,r> + e^{i phi}|-a,r>)` for real `a` and `theta = 0`.
pub fn squeezed_cat_normalization<T: Real>(alpha: T, r: T, phi: T) -> T {
    let two = T::lit(2.0);
    (two + two * (-two * alpha * alpha * (two * r).exp()).exp() * phi.cos()).sqrt().recip()
}

/// Equivalence test of a coherent state against the same state squeezed by `r`.
pub fn squeezed_equivalence_p1<T: Real>(r: T) -> T {
    let half = T::lit(0.5);
    half - half / r.cosh()
}

fn squeezed_cat_terms<T: Real>(alpha: T, r: T, phi1: T, phi2: T) -> (T, T) {
    let n1 = cat_normalization(alpha, phi1);
    let n2 = squeezed_cat_normalization(alpha, r, phi2);
    let e = (-T::lit(2.0) * alpha * alpha * (T::one() + r.tanh())).exp();
    (T::lit(2.0) * (n1 * n2).powi(2) / r.cosh(), e)
}

/// Cat with phase `phi1` against a squeezed cat with phase `phi2` (real `alpha`, `theta = 0`).
///
/// The interference term depends on the half angles `(phi2 - phi1)/2` and `(phi1 + phi2)/2`.
pub fn squeezed_cat_p1<T: Real>(alpha: T, r: T, phi1: T, phi2: T) -> T {
    let (pre, e) = squeezed_cat_terms(alpha, r, phi1, phi2);
    let half = T::lit(0.5);
    let b = ((phi2 - phi1) * half).cos() + e * ((phi1 + phi2) * half).cos();
    half - pre * b * b
}

/// Same test with full angles in the interference term.
pub fn squeezed_cat_p1_printed<T: Real>(alpha: T, r: T, phi1: T, phi2: T) -> T {
    let (pre, e) = squeezed_cat_terms(alpha, r, phi1, phi2);
    let b = (phi2 - phi1).cos() + e * (phi1 + phi2).cos();
    T::lit(0.5) - pre * b * b
}

/// `P(11) = 1 / (8 (sech|a|^2 + 1))` for two copies of `N(|a,0> + |0,a>)`.
pub fn ecvs_p11_printed<T: Real>(alpha_abs: T) -> T {
    let a2 = alpha_abs * alpha_abs;
    (T::lit(8.0) * (a2.cosh().recip() + T::one())).recip()
}

/// `P(11) = 1 / (8 (sech 4|a|^2 + 1))` for two copies of `N(|a,-a> + |-a,a>)`.
pub fn ecs_plus_p11_printed<T: Real>(alpha_abs: T) -> T {
    let a2 = alpha_abs * alpha_abs;
    (T::lit(8.0) * ((T::lit(4.0) * a2).cosh().recip() + T::one())).recip()
}

/// `(1 / 2cosh^4 r) sum_{j != k < D} tanh^{2(j+k)} r`, without normalizing the truncated state.
pub fn tmsv_p11_printed<T: Real>(r: T, d: usize) -> T {
    let q = r.tanh().powi(2);
    let pows: Vec<T> = std::iter::successors(Some(T::one()), |&p| Some(p * q)).take(d).collect();
    let mut s = T::zero();
    for (j, &pj) in pows.iter().enumerate() {
        for (k, &pk) in pows.iter().enumerate() {
            if j != k {
                s += pj * pk;
            }
        }
    }
    s / (T::lit(2.0) * r.cosh().powi(4))
}

/// `P(11)` for two copies of the renormalized truncated TMSV:
/// `(1/2)(1 - sum l_j^2 / (sum l_j)^2)` with `l_j = tanh^{2j} r`.
pub fn tmsv_p11<T: Real>(r: T, d: usize) -> T {
    let q = r.tanh().powi(2);
    let (mut s1, mut s2, mut p) = (T::zero(), T::zero(), T::one());
    for _ in 0..d {
        s1 += p;
        s2 += p * p;
        p *= q;
    }
    T::lit(0.5) * (T::one() - s2 / (s1 * s1))
}
