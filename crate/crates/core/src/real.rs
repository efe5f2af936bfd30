use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Scalar type of every numerical kernel in this crate: `f32` or `f64`.
pub trait Real: Float + FromPrimitive + NumAssign + Sum + Debug + Display + Copy + 'static {}

impl Real for f32 {}
impl Real for f64 {}

/// Lift an `f64` literal into the generic scalar.
#[inline]
pub(crate) fn r<R: Real>(x: f64) -> R {
    R::from_f64(x).expect("f64 literal converts into Real")
}
