use crate::error::{Error, Result};
use crate::hilbert::{DensityMatrix, PureState, SiteLayout};
use crate::num::{c, Real, C};
use crate::swaptest::distribution::ControlDistribution;
use crate::swaptest::spec::SwapGroupSpec;

/// Circuit-engine cases up to this total dimension are cross-checked in tests.
pub const AGREEMENT_DIM: usize = 1 << 20;

/// Eigenvalues below this are dropped when mixed inputs are unravelled for the circuit engine.
const ENSEMBLE_CUTOFF: f64 = 1e-15;

/// A test input, pure or mixed.
#[derive(Debug, Clone, Copy)]
pub enum Input<'a, T: Real> {
    Pure(&'a PureState<T>),
    Mixed(&'a DensityMatrix<T>),
}

impl<'a, T: Real> Input<'a, T> {
    pub fn layout(&self) -> &'a SiteLayout {
        match self {
            Input::Pure(p) => p.layout(),
            Input::Mixed(r) => r.layout(),
        }
    }
}

impl<'a, T: Real> From<&'a PureState<T>> for Input<'a, T> {
    fn from(p: &'a PureState<T>) -> Self {
        Input::Pure(p)
    }
}

impl<'a, T: Real> From<&'a DensityMatrix<T>> for Input<'a, T> {
    fn from(r: &'a DensityMatrix<T>) -> Self {
        Input::Mixed(r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Marginal-overlap expansion.
    #[default]
    Expectation,
    /// Literal statevector simulation of the controlled-swap circuit.
    Circuit,
}

fn check_inputs<T: Real>(a: &Input<'_, T>, b: &Input<'_, T>, spec: &SwapGroupSpec) -> Result<()> {
    for x in [a.layout(), b.layout()] {
        if x != spec.layout() {
            return Err(Error::LayoutMismatch { left: spec.layout().dims().to_vec(), right: x.dims().to_vec() });
        }
    }
    Ok(())
}

pub fn run<'a, T: Real>(
    engine: Engine,
    a: impl Into<Input<'a, T>>,
    b: impl Into<Input<'a, T>>,
    spec: &SwapGroupSpec,
) -> Result<ControlDistribution<T>> {
    match engine {
        Engine::Expectation => swap_expectation_test(a, b, spec),
        Engine::Circuit => cswap_circuit_test(a, b, spec),
    }
}

/// `Tr[rho_a^X rho_b^X]` on the union `X` of every subset of groups, by mask.
pub fn overlap_traces<'a, T: Real>(a: Input<'a, T>, b: Input<'a, T>, spec: &SwapGroupSpec) -> Result<Vec<T>> {
    let m = spec.m();
    let mut out = vec![T::one(); 1 << m];
    for (mask, slot) in out.iter_mut().enumerate().skip(1) {
        let x = spec.union(mask);
        *slot = match (a, b) {
            (Input::Pure(p), Input::Pure(q)) => p.marginal_overlap(q, &x)?,
            _ => marginal_of(a, &x)?.overlap(&marginal_of(b, &x)?)?,
        };
    }
    Ok(out)
}

fn marginal_of<T: Real>(x: Input<'_, T>, keep: &[usize]) -> Result<DensityMatrix<T>> {
    match x {
        Input::Pure(p) => p.marginal(keep),
        Input::Mixed(r) => r.partial_trace(keep),
    }
}

/// Control distribution from the swap-operator expansion
/// `P(z) = 2^-m sum_T (-1)^{z.T} Tr[rho_a^T rho_b^T]`.
pub fn swap_expectation_test<'a, T: Real>(
    a: impl Into<Input<'a, T>>,
    b: impl Into<Input<'a, T>>,
    spec: &SwapGroupSpec,
) -> Result<ControlDistribution<T>> {
    let (a, b) = (a.into(), b.into());
    check_inputs(&a, &b, spec)?;
    let traces = overlap_traces(a, b, spec)?;
    let m = spec.m();
    let scale = T::one() / T::from_count(1 << m);
    let probs = (0..1usize << m)
        .map(|z| {
            traces.iter().enumerate().fold(T::zero(), |s, (t, &v)| {
                if (z & t).count_ones() % 2 == 0 {
                    s + v
                } else {
                    s - v
                }
            }) * scale
        })
        .collect();
    ControlDistribution::from_probs(m, probs)
}

/// Simulates `|0>^m`, Hadamards, controlled group swaps, Hadamards on the
/// register `controls (x) a (x) b`, then takes the exact control marginal.
///
/// Mixed inputs are unravelled into their eigen-ensembles and the pure-pair
/// distributions averaged.
pub fn cswap_circuit_test<'a, T: Real>(
    a: impl Into<Input<'a, T>>,
    b: impl Into<Input<'a, T>>,
    spec: &SwapGroupSpec,
) -> Result<ControlDistribution<T>> {
    let (a, b) = (a.into(), b.into());
    check_inputs(&a, &b, spec)?;
    let d = spec.layout().total_dim();
    let mut dims = vec![2; spec.m()];
    dims.extend_from_slice(spec.layout().dims());
    dims.extend_from_slice(spec.layout().dims());
    SiteLayout::new(dims).map_err(|_| Error::DimensionCap {
        dim: (d as u128 * d as u128 * (1u128 << spec.m())).min(usize::MAX as u128) as usize,
        cap: crate::hilbert::DIMENSION_CAP,
    })?;
    let perms = group_permutations(spec);
    let unravel = |x: Input<'a, T>| -> Vec<(T, PureState<T>)> {
        match x {
            Input::Pure(p) => vec![(T::one(), p.clone())],
            Input::Mixed(r) => r.ensemble(T::lit(ENSEMBLE_CUTOFF)),
        }
    };
    let ea = unravel(a);
    let eb = unravel(b);
    let mut parts = Vec::with_capacity(ea.len() * eb.len());
    for (wa, pa) in &ea {
        for (wb, pb) in &eb {
            parts.push((*wa * *wb, circuit_pure(pa, pb, spec.m(), &perms)));
        }
    }
    let total = parts.iter().fold(T::zero(), |s, (w, _)| s + *w);
    let m = spec.m();
    let mut acc = vec![T::zero(); 1 << m];
    for (w, probs) in &parts {
        for (x, &p) in acc.iter_mut().zip(probs) {
            *x += *w / total * p;
        }
    }
    ControlDistribution::from_probs(m, acc)
}

/// For each group, the permutation of `a (x) b` indices exchanging that group's sites.
fn group_permutations(spec: &SwapGroupSpec) -> Vec<Vec<usize>> {
    let layout = spec.layout();
    let d = layout.total_dim();
    let strides = layout.strides();
    spec.groups()
        .iter()
        .map(|g| {
            (0..d * d)
                .map(|ab| {
                    let (mut ia, mut ib) = (ab / d, ab % d);
                    for &s in g {
                        let (st, ds) = (strides[s], layout.dims()[s]);
                        let (xa, xb) = ((ia / st) % ds, (ib / st) % ds);
                        ia = ia - xa * st + xb * st;
                        ib = ib - xb * st + xa * st;
                    }
                    ia * d + ib
                })
                .collect()
        })
        .collect()
}

/// Control-register probabilities by group mask for a pure pair.
fn circuit_pure<T: Real>(a: &PureState<T>, b: &PureState<T>, m: usize, perms: &[Vec<usize>]) -> Vec<T> {
    let ab = a.amplitudes().kronecker(b.amplitudes());
    let block = ab.len();
    let mut psi: Vec<C<T>> = vec![c(T::zero()); block << m];
    psi[..block].copy_from_slice(ab.as_slice());
    // control of group g is register site g, i.e. bit (m - 1 - g) of the block index
    let bit = |g: usize| 1usize << (m - 1 - g);
    for g in 0..m {
        hadamard_on(&mut psi, block, bit(g));
    }
    let mut scratch = vec![c(T::zero()); block];
    for (g, perm) in perms.iter().enumerate() {
        for blk in (0..1usize << m).filter(|blk| blk & bit(g) != 0) {
            let chunk = &mut psi[blk * block..(blk + 1) * block];
            for (k, &dst) in perm.iter().enumerate() {
                scratch[dst] = chunk[k];
            }
            chunk.copy_from_slice(&scratch);
        }
    }
    for g in 0..m {
        hadamard_on(&mut psi, block, bit(g));
    }
    let mut probs = vec![T::zero(); 1 << m];
    for blk in 0..1usize << m {
        let p = psi[blk * block..(blk + 1) * block].iter().fold(T::zero(), |s, z| s + z.norm_sqr());
        let mask = (0..m).filter(|&g| blk & bit(g) != 0).fold(0, |acc, g| acc | 1 << g);
        probs[mask] = p;
    }
    probs
}

fn hadamard_on<T: Real>(psi: &mut [C<T>], block: usize, bit: usize) {
    let h = c(T::FRAC_1_SQRT_2());
    let nblk = psi.len() / block;
    for lo in (0..nblk).filter(|blk| blk & bit == 0) {
        let hi = lo | bit;
        let (x0, x1) = (lo * block, hi * block);
        for k in 0..block {
            let u = psi[x0 + k];
            let v = psi[x1 + k];
            psi[x0 + k] = (u + v) * h;
            psi[x1 + k] = (u - v) * h;
        }
    }
}
