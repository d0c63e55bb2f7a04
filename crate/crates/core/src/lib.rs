//! Numerical workbench for operator (p,h)-convexity inequalities on
//! finite-dimensional Hermitian matrices: functional calculus, Loewner-order
//! verdicts, structured samplers, one oracle per inequality, and a randomized
//! counterexample search.
//!
//! The library is generic over the real scalar backing the complex matrices
//! (via [`Real`]); the `*64` aliases at the crate root are the default lane.

pub mod error;
pub mod falsifier;
pub mod functions;
pub mod interval;
pub mod linalg;
pub mod oracles;
pub mod samplers;
pub mod scalar;
pub mod witness;

pub use error::{Error, Result};
pub use scalar::{real, Real};

/// Default f64 instantiations.
pub type Hermitian64 = linalg::HermitianMatrix<f64>;
pub type Spectral64 = linalg::SpectralDecomposition<f64>;
pub type Interval64 = interval::Interval<f64>;
pub type Tolerance64 = linalg::ToleranceConfig<f64>;
pub type Function64 = functions::ScalarFunction<f64>;
pub type Weight64 = functions::WeightFunction<f64>;
