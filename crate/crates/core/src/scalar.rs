//! Floating-point scalar abstraction: f32 or f64.

use num_traits::{Float, FromPrimitive, NumCast};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Floating scalar the numerical layer is generic over.
pub trait Real:
    Float + FromPrimitive + NumCast + Sum + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from `f64` (panics on values a float cannot represent,
    /// which cannot happen for finite inputs).
    fn of(x: f64) -> Self {
        <Self as NumCast>::from(x).expect("finite f64 converts to any Real")
    }

    /// Lossy conversion to `f64`.
    fn as_f64(self) -> f64 {
        <f64 as NumCast>::from(self).expect("any Real converts to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand used throughout the crate for `F::of`.
#[inline]
pub(crate) fn r<F: Real>(x: f64) -> F {
    F::of(x)
}
