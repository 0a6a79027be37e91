//! States, operators and the scalar quantities built from them.

pub mod layout;
pub mod linalg;
pub mod operator;
pub mod state;

pub use layout::{SiteLayout, DIMENSION_CAP};
pub use linalg::{CMatrix, CVector};
pub use operator::{gates, Operator};
pub use state::{DensityMatrix, PureState, DENSITY_TOL, NORMALIZE_SLACK};

use crate::error::{Error, Result};
use crate::num::{Real, C};

/// Any of the three tensorable kinds, for call sites that only know the kind at runtime.
#[derive(Debug, Clone, PartialEq)]
pub enum Tensorable<T: Real> {
    Pure(PureState<T>),
    Mixed(DensityMatrix<T>),
    Op(Operator<T>),
}

impl<T: Real> Tensorable<T> {
    fn kind(&self) -> &'static str {
        match self {
            Tensorable::Pure(_) => "pure state",
            Tensorable::Mixed(_) => "density matrix",
            Tensorable::Op(_) => "operator",
        }
    }
}

/// Kronecker product of two values of the same kind.
pub fn tensor<T: Real>(a: &Tensorable<T>, b: &Tensorable<T>) -> Result<Tensorable<T>> {
    match (a, b) {
        (Tensorable::Pure(x), Tensorable::Pure(y)) => x.tensor(y).map(Tensorable::Pure),
        (Tensorable::Mixed(x), Tensorable::Mixed(y)) => x.tensor(y).map(Tensorable::Mixed),
        (Tensorable::Op(x), Tensorable::Op(y)) => x.tensor(y).map(Tensorable::Op),
        _ => Err(Error::KindMismatch(if a.kind() == "operator" { b.kind() } else { a.kind() })),
    }
}

pub fn inner_product<T: Real>(a: &PureState<T>, b: &PureState<T>) -> Result<C<T>> {
    a.inner(b)
}

pub fn partial_trace<T: Real>(rho: &DensityMatrix<T>, keep: &[usize]) -> Result<DensityMatrix<T>> {
    rho.partial_trace(keep)
}

pub fn purity<T: Real>(rho: &DensityMatrix<T>) -> T {
    rho.purity()
}

pub fn fidelity_pure<T: Real>(a: &PureState<T>, b: &PureState<T>) -> Result<T> {
    a.fidelity(b)
}

pub fn von_neumann_entropy<T: Real>(rho: &DensityMatrix<T>) -> T {
    rho.von_neumann_entropy()
}

/// `2|A00 A11 - A01 A10|` for a two-qubit pure state.
pub fn concurrence_2q<T: Real>(psi: &PureState<T>) -> Result<T> {
    if psi.layout().dims() != [2, 2] {
        return Err(Error::LayoutMismatch { left: vec![2, 2], right: psi.layout().dims().to_vec() });
    }
    let a = psi.amplitudes();
    let det = a[0] * a[3] - a[1] * a[2];
    Ok(T::lit(2.0) * det.norm_sqr().sqrt())
}

pub fn apply<T: Real>(op: &Operator<T>, psi: &PureState<T>) -> Result<PureState<T>> {
    psi.apply(op)
}

pub fn apply_mixed<T: Real>(op: &Operator<T>, rho: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
    rho.apply(op)
}

pub fn embed<T: Real>(op: &Operator<T>, layout: &SiteLayout, sites: &[usize]) -> Result<Operator<T>> {
    op.embed(layout, sites)
}
