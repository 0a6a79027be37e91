//! Scalar abstraction shared by every module.
//!
//! All linear algebra is written against [`Real`], so the same code runs in
//! `f32` or `f64`. Tolerances quoted in the docs are for `f64`; for coarser
//! types [`Real::tol`] widens them to a small multiple of machine epsilon.

use nalgebra as na;
use num_complex::Complex;
use num_traits::{FloatConst, FromPrimitive, ToPrimitive};

/// Real field usable as the scalar of states and operators.
pub trait Real: na::RealField + Copy + FloatConst + FromPrimitive + ToPrimitive {
    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Converts a count.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// A tolerance no tighter than 64 ulps at unit scale.
    #[inline]
    fn tol(x: f64) -> Self {
        let floor = Self::default_epsilon() * Self::lit(64.0);
        let t = Self::lit(x);
        if t > floor {
            t
        } else {
            floor
        }
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex amplitude over a [`Real`] field.
pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn c<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

#[inline]
pub(crate) fn cplx<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

/// `e^{i phi}`
#[inline]
pub(crate) fn phase<T: Real>(phi: T) -> C<T> {
    Complex::new(phi.cos(), phi.sin())
}

#[inline]
pub(crate) fn cexp<T: Real>(z: C<T>) -> C<T> {
    let m = z.re.exp();
    Complex::new(m * z.im.cos(), m * z.im.sin())
}
