use std::fmt;

use crate::error::{Error, Result};
use crate::num::Real;

/// Below this, negative probabilities are treated as rounding noise.
pub const NEGATIVE_FLOOR: f64 = 1e-12;

/// How control bits map to characters of a bitstring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BitOrder {
    /// Leftmost character is the control of group 0.
    #[default]
    GroupFirst,
    /// Leftmost character is the control of the last group.
    GroupLast,
}

impl BitOrder {
    pub fn render(self, mask: usize, m: usize) -> String {
        (0..m)
            .map(|pos| {
                let g = match self {
                    BitOrder::GroupFirst => pos,
                    BitOrder::GroupLast => m - 1 - pos,
                };
                if mask >> g & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }

    pub fn parse(self, bits: &str) -> Result<usize> {
        let m = bits.len();
        let mut mask = 0;
        for (pos, ch) in bits.chars().enumerate() {
            let g = match self {
                BitOrder::GroupFirst => pos,
                BitOrder::GroupLast => m - 1 - pos,
            };
            match ch {
                '0' => {}
                '1' => mask |= 1 << g,
                _ => return Err(Error::InvalidParameter(format!("bad control bit {ch:?}"))),
            }
        }
        Ok(mask)
    }
}

impl fmt::Display for BitOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BitOrder::GroupFirst => "GROUP_FIRST",
            BitOrder::GroupLast => "GROUP_LAST",
        })
    }
}

impl std::str::FromStr for BitOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "GROUP_FIRST" => Ok(BitOrder::GroupFirst),
            "GROUP_LAST" => Ok(BitOrder::GroupLast),
            _ => Err(Error::InvalidParameter(format!("unknown bit order {s:?}"))),
        }
    }
}

/// Exact probabilities of the control register, indexed by group mask
/// (bit `g` set when group `g`'s control reads 1).
#[derive(Debug, Clone, PartialEq)]
pub struct ControlDistribution<T> {
    m: usize,
    probs: Vec<T>,
}

impl<T: Real> ControlDistribution<T> {
    /// Clamps noise-level negatives to zero and renormalizes.
    pub fn from_probs(m: usize, mut probs: Vec<T>) -> Result<Self> {
        if probs.len() != 1 << m {
            return Err(Error::DimensionMismatch { expected: 1 << m, found: probs.len() });
        }
        let floor = -T::tol(NEGATIVE_FLOOR);
        for (mask, p) in probs.iter_mut().enumerate() {
            if *p < floor || !p.is_finite() {
                return Err(Error::NegativeProbability {
                    bits: BitOrder::GroupFirst.render(mask, m),
                    value: p.to_f64_lossy(),
                });
            }
            if *p < T::zero() {
                *p = T::zero();
            }
        }
        let total = probs.iter().fold(T::zero(), |s, &p| s + p);
        if total <= T::zero() {
            return Err(Error::ZeroVector);
        }
        for p in &mut probs {
            *p /= total;
        }
        Ok(Self { m, probs })
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    #[inline]
    pub fn prob(&self, mask: usize) -> T {
        self.probs[mask]
    }

    pub fn prob_bits(&self, bits: &str, order: BitOrder) -> Result<T> {
        if bits.len() != self.m {
            return Err(Error::DimensionMismatch { expected: self.m, found: bits.len() });
        }
        Ok(self.probs[order.parse(bits)?])
    }

    pub fn all_zero(&self) -> T {
        self.probs[0]
    }

    pub fn all_one(&self) -> T {
        self.probs[(1 << self.m) - 1]
    }

    pub fn odd(&self) -> T {
        self.sum_where(|mask| mask.count_ones() % 2 == 1)
    }

    pub fn even_nonzero(&self) -> T {
        self.sum_where(|mask| mask != 0 && mask.count_ones() % 2 == 0)
    }

    /// Even weight of at least four.
    pub fn even_above_two(&self) -> T {
        self.sum_where(|mask| mask.count_ones() >= 4 && mask.count_ones() % 2 == 0)
    }

    /// `(P(all zero), P(even, nonzero), P(odd))`
    pub fn parity(&self) -> (T, T, T) {
        (self.all_zero(), self.even_nonzero(), self.odd())
    }

    fn sum_where(&self, f: impl Fn(usize) -> bool) -> T {
        self.probs
            .iter()
            .enumerate()
            .filter(|(mask, _)| f(*mask))
            .fold(T::zero(), |s, (_, &p)| s + p)
    }

    /// `(bitstring, probability)` pairs in mask order.
    pub fn entries(&self, order: BitOrder) -> Vec<(String, T)> {
        self.probs.iter().enumerate().map(|(mask, &p)| (order.render(mask, self.m), p)).collect()
    }

    pub fn max_abs_diff(&self, other: &ControlDistribution<T>) -> T {
        self.probs
            .iter()
            .zip(&other.probs)
            .fold(T::zero(), |m, (&a, &b)| if (a - b).abs() > m { (a - b).abs() } else { m })
    }

    /// `sum_k w_k dist_k` for weights summing to one.
    pub fn mix(parts: &[(T, ControlDistribution<T>)]) -> Result<Self> {
        let first = parts.first().ok_or(Error::EmptySelection)?;
        let m = first.1.m;
        let mut acc = vec![T::zero(); 1 << m];
        for (w, d) in parts {
            if d.m != m {
                return Err(Error::DimensionMismatch { expected: m, found: d.m });
            }
            for (a, &p) in acc.iter_mut().zip(&d.probs) {
                *a += *w * p;
            }
        }
        Self::from_probs(m, acc)
    }
}
