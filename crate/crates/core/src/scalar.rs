use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating point type the contest math is written against: `f32` or `f64`.
///
/// Tolerances throughout the crate are specified as `f64` literals and lifted
/// with [`Scalar::lit`]. Simplex checks widen to a few ulps when the scalar is
/// too coarse to hold the nominal tolerance.
pub trait Scalar:
    Float + FromPrimitive + Debug + Display + Default + Send + Sync + Serialize + DeserializeOwned + 'static
{
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar")
    }

    fn count(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("usize representable in scalar")
    }

    /// Absolute tolerance for probability vectors summing to one.
    fn simplex_tolerance() -> Self {
        Self::lit(1e-12).max(Self::epsilon() * Self::lit(64.0))
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
