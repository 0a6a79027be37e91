use crate::error::{Error, Result};
use crate::num::{Real, C};
use crate::optical::{self, analytic, FockCutoff, OpticalParams};

use super::equivalence_test;

/// Which pair of optical states the equivalence test compares.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OpticalCase<T> {
    /// `|alpha>` against `D(alpha) S(xi) |0>`.
    SqueezedCoherent(OpticalParams<T>),
    /// A cat with phase `phi1` against the squeezed cat of `params`.
    SqueezedCat { params: OpticalParams<T>, phi1: T },
}

/// Numeric and closed-form `P(1)` for one optical comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpticalRecord<T> {
    pub numeric: T,
    pub analytic: T,
    /// The squeezed-cat expression with full angles; `None` for the coherent case.
    pub analytic_printed: Option<T>,
    pub d_cut: usize,
    pub norm_deficit: T,
}

/// Runs the equivalence test on truncated states and evaluates the matching closed form.
///
/// The squeezed-cat closed form needs real `alpha` and `theta = 0`.
pub fn optical_equivalence_suite<T: Real>(case: OpticalCase<T>, cut: &FockCutoff) -> Result<OpticalRecord<T>> {
    let (a, b, analytic, printed) = match case {
        OpticalCase::SqueezedCoherent(p) => {
            let a = optical::coherent(p.alpha, cut)?;
            let b = optical::squeezed_coherent(p.alpha, p.xi(), cut)?;
            (a, b, analytic::squeezed_equivalence_p1(p.r), None)
        }
        OpticalCase::SqueezedCat { params: p, phi1 } => {
            let alpha = real_alpha(p.alpha, p.theta)?;
            let a = optical::cat(p.alpha, phi1, cut)?;
            let b = optical::squeezed_cat(p.alpha, p.xi(), p.phi, cut)?;
            let an = analytic::squeezed_cat_p1(alpha, p.r, phi1, p.phi);
            let pr = analytic::squeezed_cat_p1_printed(alpha, p.r, phi1, p.phi);
            (a, b, an, Some(pr))
        }
    };
    let dist = equivalence_test(&a.state, &b.state)?;
    let deficit = if a.norm_deficit > b.norm_deficit { a.norm_deficit } else { b.norm_deficit };
    Ok(OpticalRecord { numeric: dist.prob(1), analytic, analytic_printed: printed, d_cut: cut.d_cut(), norm_deficit: deficit })
}

fn real_alpha<T: Real>(alpha: C<T>, theta: T) -> Result<T> {
    if alpha.im != T::zero() || theta != T::zero() {
        return Err(Error::InvalidParameter("squeezed-cat closed form needs real alpha and theta = 0".into()));
    }
    Ok(alpha.re)
}
