//! Scalar abstraction: the workbench is generic over the real field backing
//! the complex matrices, so everything runs at f64 (the default) or f32.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real scalar usable as the base field of the workbench.
///
/// Combines nalgebra's `RealField` (needed by the matrix kernels) with the
/// num-traits float interface used for classification and tolerances.
pub trait Real:
    nalgebra::RealField
    + Float
    + FromPrimitive
    + ToPrimitive
    + Sum<Self>
    + Default
    + Copy
    + Debug
    + Display
    + LowerExp
    + 'static
{
    /// Lossless-enough conversion from an f64 constant (tolerances, literals).
    fn of(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 constant not representable")
    }

    /// Widening view for reporting and serialization.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar not representable as f64")
    }
}

impl Real for f64 {}
impl Real for f32 {}

/// Shorthand for `T::of` at call sites that would otherwise need turbofish.
pub fn real<T: Real>(x: f64) -> T {
    T::of(x)
}

/// A tolerance constant with a scalar-type floor: the stated f64 value, or a
/// few dozen ulps when the lane is coarser (f32). On f64 the stated value
/// always dominates.
pub fn scaled_tol<T: Real>(spec_value: f64) -> T {
    Float::max(real(spec_value), real::<T>(32.0) * T::epsilon())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_round_trip() {
        assert_eq!(f64::of(1e-9), 1e-9);
        assert_eq!(1.5f64.as_f64(), 1.5);
        assert_eq!(f32::of(0.25), 0.25f32);
    }
}
