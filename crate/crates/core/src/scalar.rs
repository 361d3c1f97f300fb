//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar the evaluators are generic over (`f32` or `f64`).
///
/// The accuracy targets quoted throughout the crate documentation refer to
/// `f64`; the `f32` instantiation is supported but proportionally less exact.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossless-as-possible conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex scalar over a [`Real`].
pub type Cx<T> = Complex<T>;

pub(crate) fn cx<T: Real>(re: T, im: T) -> Cx<T> {
    Complex::new(re, im)
}

pub(crate) fn re<T: Real>(x: T) -> Cx<T> {
    Complex::new(x, T::zero())
}

/// `|a - b| / max(|b|, floor)`.
pub fn relative_error<T: Real>(a: Cx<T>, b: Cx<T>, floor: T) -> T {
    (a - b).norm() / b.norm().max(floor)
}
