//! Scalar abstraction: every numeric routine in this crate is generic over a
//! floating-point type implementing [`Scalar`].

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar usable throughout the crate (f32 or f64).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Sum<Self> + Debug + Display + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + NumAssign
        + Sum<T>
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Shorthand for pulling f64 literals into the generic scalar type.
#[inline]
pub(crate) fn cast<F: Scalar>(x: f64) -> F {
    F::from_f64(x).expect("f64 literal representable in scalar type")
}

/// Round-half-to-even, evaluated through f64.
#[inline]
pub(crate) fn round_ties_even<F: Scalar>(x: F) -> F {
    cast(x.to_f64().expect("finite scalar").round_ties_even())
}

/// Natural log of the gamma function, routed through the f64 implementation.
///
/// Accurate to a few ulps for f64 and therefore exact after truncation to f32.
#[inline]
pub(crate) fn ln_gamma<F: Scalar>(x: F) -> F {
    cast(libm::lgamma(x.to_f64().expect("finite scalar")))
}
