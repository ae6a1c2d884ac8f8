//! Scalar abstraction: the whole core is generic over the floating-point
//! type through this trait, with `f64` as the default everywhere.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rustfft::FftNum;

/// Floating-point scalar usable throughout the lab: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + FftNum + Sum<Self> + Display + LowerExp + Debug
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + FftNum
        + Sum<T>
        + Display
        + LowerExp
        + Debug
{
}

/// Converts an `f64` constant into the working scalar type.
#[inline]
pub fn from_f64<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant not representable in scalar type")
}

/// Complex unit phase e^{2πi θ}.
#[inline]
pub fn unit_phase<T: Real>(theta: T) -> Complex<T> {
    let angle = T::TAU() * theta;
    Complex::new(angle.cos(), angle.sin())
}
