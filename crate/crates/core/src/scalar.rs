//! Scalar abstractions.
//!
//! Two families of number types flow through the crate. Planar polygon code
//! only needs an ordered field, so it runs unchanged over exact rationals
//! (certificates) or over binary floats. Sphere code needs square roots and
//! trigonometry and is written against [`Real`].

use num_traits::{Float, FloatConst, FromPrimitive, Signed, ToPrimitive};
use std::fmt::Debug;

/// An ordered field. Implemented for `BigRational`, `f64` and `f32`.
pub trait Scalar:
    Clone + Debug + PartialOrd + Signed + ToPrimitive + FromPrimitive + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Clone + Debug + PartialOrd + Signed + ToPrimitive + FromPrimitive + Send + Sync + 'static
{
}

/// A binary floating point type (`f32` or `f64`).
pub trait Real: Float + FloatConst + Debug + Send + Sync + 'static {
    fn lit(x: f64) -> Self;
    fn as_f64(self) -> f64;
}

impl Real for f64 {
    #[inline]
    fn lit(x: f64) -> Self {
        x
    }
    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}

impl Real for f32 {
    #[inline]
    fn lit(x: f64) -> Self {
        x as f32
    }
    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }
}

/// Converts a scalar to `f64`, saturating to NaN if the value is not representable.
pub fn to_f64<T: Scalar>(x: &T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact conversion from a finite `f64`.
pub fn from_f64<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("finite float")
}

/// Sign of `a`, falling back to the sign of `b` when `a` is zero.
///
/// Used to evaluate predicates at a point displaced by a positive
/// infinitesimal, where `b` is the first-order coefficient.
pub fn sign_eps<T: Scalar>(a: &T, b: &T) -> i8 {
    let s = sign(a);
    if s != 0 {
        s
    } else {
        sign(b)
    }
}

pub fn sign<T: Scalar>(a: &T) -> i8 {
    if a.is_positive() {
        1
    } else if a.is_negative() {
        -1
    } else {
        0
    }
}
