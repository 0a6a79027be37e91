//! Controlled-SWAP test executors.
//!
//! Every test is a [`SwapGroupSpec`] plus an engine. The expectation engine
//! needs only marginal overlaps and is the default; the circuit engine
//! simulates the ancilla register literally and is used to cross-check it.

mod distribution;
mod engine;
mod optical;
mod spec;

pub use distribution::{BitOrder, ControlDistribution, NEGATIVE_FLOOR};
pub use engine::{cswap_circuit_test, overlap_traces, run, swap_expectation_test, Engine, Input, AGREEMENT_DIM};
pub use optical::{optical_equivalence_suite, OpticalCase, OpticalRecord};
pub use spec::SwapGroupSpec;

use crate::error::{Error, Result};
use crate::num::Real;

fn same_layout<T: Real>(a: &Input<'_, T>, b: &Input<'_, T>) -> Result<()> {
    if a.layout() != b.layout() {
        return Err(Error::LayoutMismatch { left: a.layout().dims().to_vec(), right: b.layout().dims().to_vec() });
    }
    Ok(())
}

/// Single control, whole state swapped; `P(1) = (1 - Tr rho_a rho_b) / 2`.
pub fn equivalence_test<'a, T: Real>(
    a: impl Into<Input<'a, T>>,
    b: impl Into<Input<'a, T>>,
) -> Result<ControlDistribution<T>> {
    let (a, b) = (a.into(), b.into());
    same_layout(&a, &b)?;
    swap_expectation_test(a, b, &SwapGroupSpec::single(a.layout().clone()))
}

/// One control per site.
pub fn full_entanglement_test<'a, T: Real>(
    a: impl Into<Input<'a, T>>,
    b: impl Into<Input<'a, T>>,
) -> Result<ControlDistribution<T>> {
    let (a, b) = (a.into(), b.into());
    same_layout(&a, &b)?;
    swap_expectation_test(a, b, &SwapGroupSpec::per_site(a.layout().clone()))
}

/// Two controls: `cut` and its complement.
pub fn bipartite_test<'a, T: Real>(
    a: impl Into<Input<'a, T>>,
    b: impl Into<Input<'a, T>>,
    cut: &[usize],
) -> Result<ControlDistribution<T>> {
    let (a, b) = (a.into(), b.into());
    same_layout(&a, &b)?;
    swap_expectation_test(a, b, &SwapGroupSpec::bipartite(a.layout().clone(), cut)?)
}

/// Two controls on single sites `i` and `j`; the rest of the state is untouched.
pub fn two_party_test<'a, T: Real>(
    a: impl Into<Input<'a, T>>,
    b: impl Into<Input<'a, T>>,
    i: usize,
    j: usize,
) -> Result<ControlDistribution<T>> {
    let (a, b) = (a.into(), b.into());
    same_layout(&a, &b)?;
    swap_expectation_test(a, b, &SwapGroupSpec::pair(a.layout().clone(), i, j)?)
}

/// Every bipartition of `n` sites up to exchange of the two sides; the side
/// holding site 0 is listed first.
pub fn bipartitions(n: usize) -> Vec<Vec<usize>> {
    (1..(1usize << (n - 1)))
        .map(|mask| {
            let rest: Vec<usize> = (0..n - 1).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
            (0..n).filter(|s| !rest.contains(s)).collect()
        })
        .collect()
}
