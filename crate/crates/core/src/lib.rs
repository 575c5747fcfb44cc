//! Sparse Fourier series on the n-torus, derivative-norm profiles, associated
//! functions, and interpolation at roots of unity.

// `!(x > 0.0)` is used on purpose so that NaN falls into the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod associated;
pub mod cli;
pub mod error;
pub mod families;
pub mod fourier;
pub mod interpolation;
pub mod multi_index;
pub mod norms;
pub mod numeric;
pub mod report;

pub use error::{Error, Result};
pub use fourier::{FourierSeries, PolyPoint, SamplingAnnulus, TorusPoint};
pub use multi_index::MultiIndex;
pub use norms::DerivativeNormProfile;
