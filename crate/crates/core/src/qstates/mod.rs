//! Named qubit and qudit state families.
//!
//! Purified mixed states always carry their environment on site 0.

mod haar;

pub use haar::{nested_angle_state, HaarSampler};

use crate::error::{Error, Result};
use crate::hilbert::{concurrence_2q, CVector, PureState, SiteLayout};
use crate::num::{c, Real, C};

/// Concurrence below which a pair counts as separable.
pub const SEPARABLE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

pub fn bell<T: Real>(kind: BellKind) -> PureState<T> {
    let h = T::FRAC_1_SQRT_2();
    let (i, j, s) = match kind {
        BellKind::PhiPlus => (0, 3, h),
        BellKind::PhiMinus => (0, 3, -h),
        BellKind::PsiPlus => (1, 2, h),
        BellKind::PsiMinus => (1, 2, -h),
    };
    let mut v = CVector::zeros(4);
    v[i] = c(h);
    v[j] = c(s);
    PureState::new(SiteLayout::qubits(2).unwrap(), v).unwrap()
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidParameter(format!("need at least {min} sites, got {n}")));
    }
    Ok(())
}

/// `(|0...0> + |1...1>)/sqrt 2`
pub fn ghz<T: Real>(n: usize) -> Result<PureState<T>> {
    check_n(n, 2)?;
    let layout = SiteLayout::qubits(n)?;
    let mut v = CVector::zeros(layout.total_dim());
    v[0] = c(T::FRAC_1_SQRT_2());
    v[layout.total_dim() - 1] = c(T::FRAC_1_SQRT_2());
    PureState::new(layout, v)
}

/// Equal superposition of the `n` single-excitation kets.
pub fn w<T: Real>(n: usize) -> Result<PureState<T>> {
    check_n(n, 2)?;
    let layout = SiteLayout::qubits(n)?;
    let a = c(T::one() / T::from_count(n).sqrt());
    let mut v = CVector::zeros(layout.total_dim());
    for k in 0..n {
        v[1 << k] = a;
    }
    PureState::new(layout, v)
}

/// `cos(pi/4 + t)|00> + sin(pi/4 + t)|11>`, concurrence `|cos 2t|`.
pub fn tilted_pair<T: Real>(t: T) -> PureState<T> {
    let a = T::frac_pi_4() + t;
    let mut v = CVector::zeros(4);
    v[0] = c(a.cos());
    v[3] = c(a.sin());
    PureState::new(SiteLayout::qubits(2).unwrap(), v).unwrap()
}

/// Two-qubit system entangled with a one-qubit environment; sites `[E, S1, S2]`.
///
/// The system has concurrence `|sin 2 theta|` at `delta = 0` and purity
/// `1 - C^2 sin^2(2 delta) / 2`.
pub fn mixed_bell_purified<T: Real>(theta: T, delta: T) -> PureState<T> {
    let h = T::FRAC_1_SQRT_2();
    let a = T::frac_pi_4() + theta;
    let (ca, sa) = (a.cos(), a.sin());
    let (cd, sd) = (delta.cos(), delta.sin());
    let mut v = CVector::zeros(8);
    for (e, w, even, odd) in [(0usize, h * cd, ca, sa), (1, h * sd, sa, ca)] {
        let base = e * 4;
        v[base] = c(w * even);
        v[base + 3] = c(w * even);
        v[base + 1] = c(w * odd);
        v[base + 2] = c(w * odd);
    }
    PureState::new(SiteLayout::qubits(3).unwrap(), v).unwrap()
}

/// Mixed GHZ family with copy deviation `epsilon`; sites `[E, S1..Sn]`.
pub fn mixed_ghz_purified<T: Real>(n: usize, delta: T, epsilon: T) -> Result<PureState<T>> {
    check_n(n, 2)?;
    let layout = SiteLayout::qubits(n + 1)?;
    let d = T::frac_pi_4() + delta;
    let e = T::frac_pi_4() + epsilon;
    let ones = (1usize << n) - 1;
    let mut v = CVector::zeros(layout.total_dim());
    v[0] = c(d.cos() * e.cos());
    v[ones] = c(d.sin() * e.sin());
    v[1 << n] = c(d.sin() * e.cos());
    v[(1 << n) | ones] = c(d.cos() * e.sin());
    PureState::new(layout, v)
}

/// Construction used for the mixed W family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WVariant {
    /// Amplitudes exactly as printed (`1/(n-1)` on the first branch), renormalized.
    Literal,
    /// First-branch coefficient `1/sqrt(n-1)`, renormalized.
    Symmetrized,
    /// Uniform-diagonal W marginal whose coherences are damped by `cos delta`
    /// (and by a further `cos epsilon` in the copy), purified so that the
    /// copy fidelity is exactly `cos^2 epsilon`.
    #[default]
    CoherenceDamped,
}

/// Mixed W family with copy deviation `epsilon`; sites `[E, S1..Sn]`.
///
/// For the text variants the environment is one site of dimension `2^(n-1)`
/// holding the `n-1` environment qubits; for [`WVariant::CoherenceDamped`] it
/// has dimension `2n`.
pub fn mixed_w_purified<T: Real>(n: usize, delta: T, epsilon: T, variant: WVariant) -> Result<PureState<T>> {
    check_n(n, 3)?;
    match variant {
        WVariant::Literal => w_text(n, delta, epsilon, T::one() / T::from_count(n - 1)),
        WVariant::Symmetrized => w_text(n, delta, epsilon, T::one() / T::from_count(n - 1).sqrt()),
        WVariant::CoherenceDamped => w_damped(n, delta, epsilon),
    }
}

fn w_text<T: Real>(n: usize, delta: T, epsilon: T, first: T) -> Result<PureState<T>> {
    let env = 1usize << (n - 1);
    let layout = SiteLayout::new(vec![env])?.concat(&SiteLayout::qubits(n)?)?;
    let sys = 1usize << n;
    let idx = |e: usize, s: usize| e * sys + s;
    // system label |x_n ... x_1>: position k is bit k-1 of the index
    let one_at = |k: usize| 1usize << (k - 1);
    let base = (T::one() / T::from_count(n).sqrt()).acos();
    let (th, ph) = (base + delta, base + epsilon);
    let (ct, st, cp, sp) = (th.cos(), th.sin(), ph.cos(), ph.sin());
    let inv = T::one() / T::from_count(n - 1).sqrt();
    let mut v = CVector::<T>::zeros(env * sys);
    v[idx(0, one_at(n))] += c(ct * cp);
    for k in 1..n {
        v[idx(0, one_at(k))] += c(first * st * sp);
    }
    for j in 1..n {
        let e = one_at(j);
        v[idx(e, one_at(j))] += c(inv * ct * sp);
        v[idx(e, one_at(n))] += c(inv * st * cp);
        for l in (1..n).filter(|&l| l != j) {
            v[idx(e, one_at(l))] += c(inv * inv * st * sp);
        }
    }
    Ok(PureState::renormalized(layout, v)?.0)
}

fn w_damped<T: Real>(n: usize, delta: T, epsilon: T) -> Result<PureState<T>> {
    let nf = T::from_count(n);
    let ca = delta.cos();
    let cb = ca * epsilon.cos();
    let lo = -T::one() / T::from_count(n - 1);
    // off-diagonal of the Gram matrix carried by the extra environment block
    let (a, b2, v_off) = if epsilon.abs() <= T::default_epsilon() {
        (T::one(), T::zero(), T::zero())
    } else {
        let a = epsilon.cos();
        let b2 = T::one() - a * a;
        (a, b2, (cb - a * a * ca) / b2)
    };
    if ca < lo || v_off < lo || v_off > T::one() || a < T::zero() {
        return Err(Error::InvalidParameter(format!(
            "damped W family undefined at delta={}, epsilon={}",
            delta.to_f64_lossy(),
            epsilon.to_f64_lossy()
        )));
    }
    // columns of sqrt(G) for G = (1-g) I + g J
    let root = |g: T, m: usize, k: usize| -> T {
        let p = (T::one() - g).sqrt();
        let q = (T::one() + T::from_count(n - 1) * g).sqrt();
        let j = T::one() / nf;
        if m == k {
            p * (T::one() - j) + q * j
        } else {
            (q - p) * j
        }
    };
    let layout = SiteLayout::new(vec![2 * n])?.concat(&SiteLayout::qubits(n)?)?;
    let sys = 1usize << n;
    let amp = T::one() / nf.sqrt();
    let b = b2.sqrt();
    let mut v = CVector::<T>::zeros(2 * n * sys);
    for k in 0..n {
        let s = 1usize << k;
        for m in 0..n {
            v[m * sys + s] = c(amp * a * root(ca, m, k));
            if b > T::zero() {
                v[(n + m) * sys + s] = c(amp * b * root(v_off, m, k));
            }
        }
    }
    PureState::new(layout, v)
}

/// Symmetric GHZ-like qudit state with seesaw amplitudes.
///
/// The lower half of the levels carries `cos(pi/4 + delta)`, the upper half
/// `sin(pi/4 + delta)`; for odd `D` the middle level keeps the undeformed weight.
pub fn seesaw_qudit<T: Real>(d: usize, n: usize, delta: T) -> Result<PureState<T>> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("qudit dimension {d} < 2")));
    }
    check_n(n, 2)?;
    let layout = SiteLayout::uniform(d, n)?;
    let rep: usize = (0..n).map(|k| d.pow(k as u32)).sum();
    let scale = (T::lit(2.0) / T::from_count(d)).sqrt();
    let a = T::frac_pi_4() + delta;
    let (lo_end, hi_start, mid) = if d % 2 == 0 { (d / 2, d / 2, None) } else { ((d - 1) / 2, (d + 1) / 2, Some((d - 1) / 2)) };
    let mut v = CVector::zeros(layout.total_dim());
    for j in 0..lo_end {
        v[j * rep] = c(scale * a.cos());
    }
    if let Some(m) = mid {
        v[m * rep] = c(scale * T::FRAC_1_SQRT_2());
    }
    for j in hi_start..d {
        v[j * rep] = c(scale * a.sin());
    }
    PureState::new(layout, v)
}

/// Two tilted pairs on sites `(0,1)` and `(2,3)`.
pub fn phi_plus_plus_4<T: Real>(delta: T) -> PureState<T> {
    let p = tilted_pair(delta);
    p.tensor(&p).unwrap()
}

/// `pair (x) Phi+` for a separable two-qubit `pair`.
pub fn chi_4<T: Real>(pair: &PureState<T>) -> Result<PureState<T>> {
    let conc = concurrence_2q(pair)?;
    if conc >= T::lit(SEPARABLE_TOL) {
        return Err(Error::InvalidParameter(format!("pair is entangled (concurrence {})", conc.to_f64_lossy())));
    }
    pair.tensor(&bell(BellKind::PhiPlus))
}

/// `cos(angle) GHZ_n + sin(angle) W_n`, renormalized.
pub fn ghz_w_mixture<T: Real>(n: usize, angle: T) -> Result<PureState<T>> {
    check_n(n, 3)?;
    let g = ghz::<T>(n)?;
    let wn = w::<T>(n)?;
    let v = g.amplitudes() * c(angle.cos()) + wn.amplitudes() * c(angle.sin());
    Ok(PureState::renormalized(g.layout().clone(), v)?.0)
}

/// Builds a state from arbitrary amplitudes, renormalizing.
pub fn from_amplitudes<T: Real>(dims: Vec<usize>, amps: Vec<C<T>>) -> Result<PureState<T>> {
    let layout = SiteLayout::new(dims)?;
    Ok(PureState::renormalized(layout, CVector::from_vec(amps))?.0)
}

/// Parameters of the mixed GHZ/W families: reference and deviated copy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedFamilyParams<T> {
    pub n: usize,
    pub delta: T,
    pub epsilon: T,
}

impl<T: Real> MixedFamilyParams<T> {
    pub fn new(n: usize, delta: T, epsilon: T) -> Result<Self> {
        check_n(n, 2)?;
        if !delta.is_finite() || !epsilon.is_finite() {
            return Err(Error::InvalidParameter("angles must be finite".into()));
        }
        Ok(Self { n, delta, epsilon })
    }

    /// Purified `(A, B)` with `A` at `epsilon = 0`.
    pub fn ghz_pair(&self) -> Result<(PureState<T>, PureState<T>)> {
        Ok((
            mixed_ghz_purified(self.n, self.delta, T::zero())?,
            mixed_ghz_purified(self.n, self.delta, self.epsilon)?,
        ))
    }

    pub fn w_pair(&self, variant: WVariant) -> Result<(PureState<T>, PureState<T>)> {
        Ok((
            mixed_w_purified(self.n, self.delta, T::zero(), variant)?,
            mixed_w_purified(self.n, self.delta, self.epsilon, variant)?,
        ))
    }

    /// System sites of the purified states.
    pub fn system_sites(&self) -> Vec<usize> {
        (1..=self.n).collect()
    }
}

#[cfg(test)]
mod tests;
