//! Controlled-SWAP tests for state equivalence and entanglement.
//!
//! The numerical core is generic over the scalar type through [`Real`]; the
//! aliases at the crate root fix it to `f64`, which is what every tolerance in
//! the documentation refers to.

pub mod error;
pub mod hilbert;
pub mod measures;
pub mod num;
pub mod optical;
pub mod qstates;
pub mod shots;
pub mod swaptest;

pub use error::{Error, Result};
pub use num::{Real, C};

pub type Complex = num::C<f64>;
pub type PureState = hilbert::PureState<f64>;
pub type DensityMatrix = hilbert::DensityMatrix<f64>;
pub type Operator = hilbert::Operator<f64>;
pub use hilbert::SiteLayout;
