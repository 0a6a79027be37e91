//! Truncated Fock-space states and the optical overlap formulas.
//!
//! Operators are matrix exponentials of generators truncated at the cutoff,
//! so they are unitary on the truncated space. The leakage a state would
//! have beyond the cutoff is estimated by rebuilding it in a space twice as
//! large and is reported as its norm deficit.

pub mod analytic;

use crate::error::{Error, Result};
use crate::hilbert::linalg::exp_anti_hermitian;
use crate::hilbert::{CMatrix, CVector, Operator, PureState, SiteLayout};
use crate::num::{c, cplx, Real, C};

/// Default ceiling on the norm lost to truncation.
pub const DEFAULT_MAX_DEFICIT: f64 = 1e-3;

/// What to do when a state loses more norm than allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeficitPolicy {
    #[default]
    Reject,
    /// Renormalize anyway; the deficit is still reported.
    Allow,
}

/// Fock levels `0..d_cut` per mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockCutoff {
    d_cut: usize,
    max_deficit: f64,
    policy: DeficitPolicy,
}

impl FockCutoff {
    pub fn new(d_cut: usize) -> Result<Self> {
        if d_cut < 2 {
            return Err(Error::InvalidParameter(format!("Fock cutoff {d_cut} < 2")));
        }
        Ok(Self { d_cut, max_deficit: DEFAULT_MAX_DEFICIT, policy: DeficitPolicy::Reject })
    }

    pub fn with_max_deficit(mut self, max: f64) -> Self {
        self.max_deficit = max;
        self
    }

    pub fn with_policy(mut self, policy: DeficitPolicy) -> Self {
        self.policy = policy;
        self
    }

    #[inline]
    pub fn d_cut(&self) -> usize {
        self.d_cut
    }

    #[inline]
    pub fn max_deficit(&self) -> f64 {
        self.max_deficit
    }

    fn padded(&self) -> Self {
        Self { d_cut: 2 * self.d_cut, ..*self }
    }

    fn check<T: Real>(&self, deficit: T) -> Result<()> {
        let d = deficit.to_f64_lossy();
        if self.policy == DeficitPolicy::Reject && !(d <= self.max_deficit) {
            return Err(Error::CutoffTooSmall { d_cut: self.d_cut, deficit: d, max: self.max_deficit });
        }
        Ok(())
    }
}

/// A normalized truncated state and the norm its construction lost.
#[derive(Debug, Clone, PartialEq)]
pub struct Truncated<T: Real> {
    pub state: PureState<T>,
    pub norm_deficit: T,
}

/// Optical parameters: amplitude, squeeze `xi = r e^{i theta}`, cat phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpticalParams<T> {
    pub alpha: C<T>,
    pub r: T,
    pub theta: T,
    pub phi: T,
}

impl<T: Real> OpticalParams<T> {
    pub fn new(alpha: C<T>, r: T, theta: T, phi: T) -> Result<Self> {
        if r < T::zero() || !r.is_finite() {
            return Err(Error::InvalidParameter("squeeze magnitude must be finite and >= 0".into()));
        }
        Ok(Self { alpha, r, theta, phi })
    }

    pub fn xi(&self) -> C<T> {
        cplx(self.r * self.theta.cos(), self.r * self.theta.sin())
    }
}

fn mode(d: usize) -> SiteLayout {
    SiteLayout::new(vec![d]).expect("cutoff >= 2")
}

fn ladder<T: Real>(d: usize) -> CMatrix<T> {
    let mut m = CMatrix::zeros(d, d);
    for n in 1..d {
        m[(n - 1, n)] = c(T::from_count(n).sqrt());
    }
    m
}

/// `a|n> = sqrt(n)|n-1>`
pub fn annihilation<T: Real>(d_cut: usize) -> Operator<T> {
    Operator::new(mode(d_cut), ladder(d_cut)).unwrap()
}

pub fn creation<T: Real>(d_cut: usize) -> Operator<T> {
    annihilation::<T>(d_cut).adjoint()
}

pub fn number<T: Real>(d_cut: usize) -> Operator<T> {
    let m = CMatrix::from_diagonal(&CVector::from_fn(d_cut, |n, _| c(T::from_count(n))));
    Operator::new(mode(d_cut), m).unwrap()
}

/// `exp(alpha a^dag - alpha^* a)` on the truncated space.
pub fn displacement<T: Real>(alpha: C<T>, d_cut: usize) -> Operator<T> {
    let a = ladder::<T>(d_cut);
    let g = a.adjoint() * alpha - &a * alpha.conj();
    Operator::new(mode(d_cut), exp_anti_hermitian(&g)).unwrap()
}

/// `exp((xi^* a^2 - xi a^dag^2) / 2)` on the truncated space.
pub fn squeeze_operator<T: Real>(xi: C<T>, d_cut: usize) -> Operator<T> {
    let a = ladder::<T>(d_cut);
    let a2 = &a * &a;
    let g = (&a2 * xi.conj() - a2.adjoint() * xi) * c(T::lit(0.5));
    Operator::new(mode(d_cut), exp_anti_hermitian(&g)).unwrap()
}

/// `exp(xi^* a b - xi a^dag b^dag)` on two truncated modes.
pub fn two_mode_squeeze_operator<T: Real>(xi: C<T>, d_cut: usize) -> Result<Operator<T>> {
    let layout = SiteLayout::uniform(d_cut, 2)?;
    let a = ladder::<T>(d_cut);
    let ab = a.kronecker(&a);
    let g = &ab * xi.conj() - ab.adjoint() * xi;
    Operator::new(layout, exp_anti_hermitian(&g))
}

fn coherent_amps<T: Real>(alpha: C<T>, d: usize) -> CVector<T> {
    let pref = (-alpha.norm_sqr() * T::lit(0.5)).exp();
    let mut v = CVector::zeros(d);
    let mut term = c(pref);
    for n in 0..d {
        if n > 0 {
            term = term * alpha / c(T::from_count(n).sqrt());
        }
        v[n] = term;
    }
    v
}

fn finish<T: Real>(layout: SiteLayout, v: CVector<T>, deficit: T, cut: &FockCutoff) -> Result<Truncated<T>> {
    cut.check(deficit)?;
    let (state, _) = PureState::renormalized(layout, v)?;
    Ok(Truncated { state, norm_deficit: deficit })
}

/// Poissonian amplitudes `e^{-|a|^2/2} a^n / sqrt(n!)` for `n < d_cut`.
pub fn coherent<T: Real>(alpha: C<T>, cut: &FockCutoff) -> Result<Truncated<T>> {
    let v = coherent_amps(alpha, cut.d_cut);
    let deficit = T::one() - v.norm_squared();
    finish(mode(cut.d_cut), v, clamp0(deficit), cut)
}

/// `<alpha|beta>`
pub fn coherent_overlap_analytic<T: Real>(alpha: C<T>, beta: C<T>) -> C<T> {
    let half = T::lit(0.5);
    let z = beta.conj() * alpha - c(half * (alpha.norm_sqr() + beta.norm_sqr()));
    crate::num::cexp(z)
}

fn clamp0<T: Real>(x: T) -> T {
    if x < T::zero() {
        T::zero()
    } else {
        x
    }
}

/// Weight beyond `cut` of a vector built at twice the cutoff.
fn leakage<T: Real>(v: &CVector<T>, cut: usize) -> T {
    let total = v.norm_squared();
    let tail = v.rows(cut, v.len() - cut).norm_squared();
    tail / total
}

fn vacuum<T: Real>(d: usize) -> CVector<T> {
    let mut v = CVector::zeros(d);
    v[0] = c(T::one());
    v
}

fn squeezed_displaced_vec<T: Real>(alpha: C<T>, xi: C<T>, d: usize) -> CVector<T> {
    let s = squeeze_operator(xi, d);
    let dd = displacement(alpha, d);
    dd.matrix() * (s.matrix() * vacuum::<T>(d))
}

/// `D(alpha) S(xi) |0>`
pub fn squeezed_coherent<T: Real>(alpha: C<T>, xi: C<T>, cut: &FockCutoff) -> Result<Truncated<T>> {
    let v = squeezed_displaced_vec(alpha, xi, cut.d_cut);
    let deficit = leakage(&squeezed_displaced_vec(alpha, xi, cut.padded().d_cut), cut.d_cut);
    finish(mode(cut.d_cut), v, deficit, cut)
}

/// `N(|alpha> + e^{i phi} |-alpha>)`
pub fn cat<T: Real>(alpha: C<T>, phi: T, cut: &FockCutoff) -> Result<Truncated<T>> {
    let a = coherent_amps(alpha, cut.d_cut);
    let deficit = clamp0(T::one() - a.norm_squared());
    let v = &a + coherent_amps(-alpha, cut.d_cut) * crate::num::phase(phi);
    if v.norm() <= T::tol(1e-12) {
        return Err(Error::ZeroVector);
    }
    finish(mode(cut.d_cut), v, deficit, cut)
}

/// `N(|alpha, xi> + e^{i phi} |-alpha, xi>)` with `|alpha, xi> = D(alpha) S(xi)|0>`.
pub fn squeezed_cat<T: Real>(alpha: C<T>, xi: C<T>, phi: T, cut: &FockCutoff) -> Result<Truncated<T>> {
    let build = |d: usize| -> CVector<T> {
        let s = squeeze_operator(xi, d).matrix() * vacuum::<T>(d);
        displacement(alpha, d).matrix() * &s + (displacement(-alpha, d).matrix() * &s) * crate::num::phase(phi)
    };
    let v = build(cut.d_cut);
    if v.norm() <= T::tol(1e-12) {
        return Err(Error::ZeroVector);
    }
    let deficit = leakage(&build(cut.padded().d_cut), cut.d_cut);
    finish(mode(cut.d_cut), v, deficit, cut)
}

/// Amplitudes `(A++, A+-, A-+, A--)` of `|+-alpha>|+-alpha>`.
pub type EcsAmplitudes<T> = [C<T>; 4];

fn check_amps<T: Real>(amps: &EcsAmplitudes<T>) -> Result<()> {
    if amps.iter().all(|z| z.norm_sqr() == T::zero()) {
        return Err(Error::InvalidParameter("all amplitudes are zero".into()));
    }
    Ok(())
}

/// Normalized two-mode superposition of `|+-alpha>|+-alpha>`.
pub fn ecs_general<T: Real>(amps: EcsAmplitudes<T>, alpha: C<T>, cut: &FockCutoff) -> Result<Truncated<T>> {
    check_amps(&amps)?;
    let p = coherent_amps(alpha, cut.d_cut);
    let m = coherent_amps(-alpha, cut.d_cut);
    let deficit = clamp0(T::one() - p.norm_squared() * p.norm_squared());
    let v = p.kronecker(&p) * amps[0] + p.kronecker(&m) * amps[1] + m.kronecker(&p) * amps[2] + m.kronecker(&m) * amps[3];
    if v.norm() <= T::tol(1e-12) {
        return Err(Error::ZeroVector);
    }
    finish(SiteLayout::uniform(cut.d_cut, 2)?, v, deficit, cut)
}

/// `N(|alpha,-alpha> + |-alpha,alpha>)`
pub fn ecs_plus<T: Real>(alpha: C<T>, cut: &FockCutoff) -> Result<Truncated<T>> {
    let (z, o) = (c(T::zero()), c(T::one()));
    ecs_general([z, o, o, z], alpha, cut)
}

/// `N(|alpha>|0> + |0>|alpha>)`
pub fn ecvs<T: Real>(alpha: C<T>, cut: &FockCutoff) -> Result<Truncated<T>> {
    let a = coherent_amps(alpha, cut.d_cut);
    let z = vacuum::<T>(cut.d_cut);
    let deficit = clamp0(T::one() - a.norm_squared());
    let v = a.kronecker(&z) + z.kronecker(&a);
    finish(SiteLayout::uniform(cut.d_cut, 2)?, v, deficit, cut)
}

/// `2 N^2 |A++ A-- - A+- A-+|` with `N` from the analytic Gram matrix of the four coherent products.
pub fn ecs_concurrence_analogue<T: Real>(amps: EcsAmplitudes<T>, alpha: C<T>) -> Result<T> {
    check_amps(&amps)?;
    let ov = coherent_overlap_analytic(alpha, -alpha);
    // <s1 s2 | t1 t2> for signs s, t; overlaps of equal signs are 1
    let one = |s: usize, t: usize| if s == t { c(T::one()) } else if s == 0 { ov } else { ov.conj() };
    let mut norm2 = c(T::zero());
    for i in 0..4 {
        for j in 0..4 {
            let (si, ti) = (i >> 1, i & 1);
            let (sj, tj) = (j >> 1, j & 1);
            norm2 += amps[i].conj() * amps[j] * one(si, sj) * one(ti, tj);
        }
    }
    let n2 = T::one() / norm2.re;
    let det = amps[0] * amps[3] - amps[1] * amps[2];
    Ok(T::lit(2.0) * n2 * det.norm_sqr().sqrt())
}

/// The finite two-mode sum `e^{-|a|^2} sum_{j,k<D} (1 + (-1)^{j+k}) a^j a^k / sqrt(j! k!) |jk>`.
///
/// The sum carries no normalization constant; its norm is compared with the
/// `D -> infinity` value `2(1 + e^{-4|a|^2})` to give the deficit.
pub fn ecs_qudit_approx<T: Real>(alpha: C<T>, cut: &FockCutoff) -> Result<Truncated<T>> {
    let d = cut.d_cut;
    let p = coherent_amps(alpha, d);
    let m = coherent_amps(-alpha, d);
    let v = p.kronecker(&p) + m.kronecker(&m);
    let full = T::lit(2.0) * (T::one() + (-T::lit(4.0) * alpha.norm_sqr()).exp());
    let deficit = clamp0(T::one() - v.norm_squared() / full);
    finish(SiteLayout::uniform(d, 2)?, v, deficit, cut)
}

/// `(1/cosh r) sum_{j<D} (-e^{i theta} tanh r)^j |jj>`; the deficit is `tanh^{2D} r`.
pub fn tmsv_qudit<T: Real>(r: T, theta: T, cut: &FockCutoff) -> Result<Truncated<T>> {
    let d = cut.d_cut;
    let layout = SiteLayout::uniform(d, 2)?;
    let q = -crate::num::phase(theta) * r.tanh();
    let mut v = CVector::zeros(d * d);
    let mut term = c(T::one() / r.cosh());
    for j in 0..d {
        v[j * d + j] = term;
        term *= q;
    }
    let deficit = clamp0(T::one() - v.norm_squared());
    finish(layout, v, deficit, cut)
}
