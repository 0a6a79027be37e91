//! Concentratable entanglement, the class ratio `R` and the tolerance rule
//! for discarding over-mixed or mismatched input pairs.

use crate::error::{Error, Result};
use crate::hilbert::PureState;
use crate::num::Real;
use crate::swaptest::ControlDistribution;

/// `1 - P(0...0)` of a per-site test.
pub fn concentratable_from_distribution<T: Real>(dist: &ControlDistribution<T>) -> T {
    T::one() - dist.all_zero()
}

/// `1 - 2^{-n} sum_{subsets} Tr rho_subset^2`, summed over every subset of sites.
pub fn concentratable_from_purities<T: Real>(psi: &PureState<T>) -> Result<T> {
    let n = psi.layout().n_sites();
    if n > 24 {
        return Err(Error::InvalidParameter(format!("{n} sites is too many subsets")));
    }
    let mut total = T::zero();
    for mask in 0..(1usize << n) {
        let keep: Vec<usize> = (0..n).filter(|s| mask >> (n - 1 - s) & 1 == 1).collect();
        total += psi.marginal_purity(&keep)?;
    }
    Ok(T::one() - total / T::from_count(1 << n))
}

/// Entanglement classes with a known ratio `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClassLabel {
    Ghz,
    W,
    #[default]
    Custom,
}

impl std::fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ClassLabel::Ghz => "GHZ",
            ClassLabel::W => "W",
            ClassLabel::Custom => "custom",
        })
    }
}

/// `R = 2/2^n` for GHZ and `1/2` for W.
pub fn ratio_r<T: Real>(class: ClassLabel, n: usize) -> Result<T> {
    match class {
        ClassLabel::Ghz => {
            if n < 2 {
                return Err(Error::InvalidParameter("GHZ ratio needs n >= 2".into()));
            }
            Ok(T::lit(2.0) / T::lit(2f64.powi(n as i32)))
        }
        ClassLabel::W => Ok(T::lit(0.5)),
        ClassLabel::Custom => Err(Error::InvalidParameter("custom classes have no closed-form ratio".into())),
    }
}

/// CE error per unit of odd-parity probability.
pub fn ratio_r_empirical<T: Real>(ce_err: T, p_odd: T) -> Result<T> {
    if !(p_odd > T::zero()) {
        return Err(Error::ZeroOddProbability);
    }
    Ok(ce_err / p_odd)
}

/// Relative CE tolerance and the class ratio it is judged against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig<T> {
    pub tolerance: T,
    pub r_class: T,
    pub class_label: ClassLabel,
    /// Set when `r_class` is the fallback for an unknown class.
    pub heuristic: bool,
}

impl<T: Real> ToleranceConfig<T> {
    pub fn new(tolerance: T, r_class: T, class_label: ClassLabel) -> Result<Self> {
        if !(tolerance > T::zero() && tolerance <= T::one()) {
            return Err(Error::InvalidParameter("tolerance must lie in (0, 1]".into()));
        }
        if !(r_class > T::zero()) {
            return Err(Error::InvalidParameter("class ratio must be positive".into()));
        }
        Ok(Self { tolerance, r_class, class_label, heuristic: false })
    }

    pub fn for_class(tolerance: T, class: ClassLabel, n: usize) -> Result<Self> {
        match class {
            ClassLabel::Custom => Self::unknown_class(tolerance),
            _ => Self::new(tolerance, ratio_r(class, n)?, class),
        }
    }

    /// Uses `R = 1/2`, the larger of the two named values, and flags it.
    pub fn unknown_class(tolerance: T) -> Result<Self> {
        let mut c = Self::new(tolerance, T::lit(0.5), ClassLabel::Custom)?;
        c.heuristic = true;
        Ok(c)
    }

    /// `(ce / R) T`
    pub fn bound(&self, ce_estimate: T) -> T {
        ce_estimate / self.r_class * self.tolerance
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceVerdict<T> {
    pub p_odd: T,
    pub bound: T,
    pub violated: bool,
    /// `1 / bound`, infinite when the bound is zero.
    pub expected_repeats_to_violation: T,
}

pub fn tolerance_check<T: Real>(
    dist: &ControlDistribution<T>,
    ce_estimate: T,
    config: &ToleranceConfig<T>,
) -> Result<ToleranceVerdict<T>> {
    if ce_estimate < T::zero() {
        return Err(Error::InvalidParameter("negative CE estimate".into()));
    }
    let p_odd = dist.odd();
    let bound = config.bound(ce_estimate);
    let repeats = if bound > T::zero() { T::one() / bound } else { T::lit(f64::INFINITY) };
    Ok(ToleranceVerdict { p_odd, bound, violated: p_odd > bound, expected_repeats_to_violation: repeats })
}

/// `ce_measured - R p_odd`, clamped to `[0, 1]`.
pub fn ce_error_correction<T: Real>(ce_measured: T, p_odd: T, r_class: T) -> T {
    let v = ce_measured - r_class * p_odd;
    if v < T::zero() {
        T::zero()
    } else if v > T::one() {
        T::one()
    } else {
        v
    }
}

/// Odd parity above `1/2 - 1/2^2` in a two-control test.
pub fn two_party_failure_flag<T: Real>(dist: &ControlDistribution<T>) -> Result<bool> {
    if dist.m() != 2 {
        return Err(Error::InvalidParameter(format!("expected two controls, got {}", dist.m())));
    }
    Ok(dist.odd() > T::lit(0.25))
}
