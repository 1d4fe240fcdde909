//! Scalar abstraction for the solver kernels.
//!
//! Everything numeric in this crate is generic over [`Real`], which is any
//! IEEE float with the conversions the kernels need. `f64` is the precision
//! the benchmark CLI uses; `f32` instantiations are available for quick
//! smoke runs where four digits are enough.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar usable by the grid, stencil and solver kernels.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + 'static
{
}

/// Converts an `f64` constant (stencil weight, extrapolation coefficient)
/// into the working scalar type.
#[inline]
pub fn real<T: Real>(v: f64) -> T {
    T::from_f64(v).expect("f64 constant must convert to the scalar type")
}

/// Converts an index or count into the working scalar type.
#[inline]
pub fn real_of<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("usize must convert to the scalar type")
}
