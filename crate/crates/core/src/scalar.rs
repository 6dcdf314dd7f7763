use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type used for every ε-dependent quantity: channel entries,
/// estimates and losses. Implemented for `f32` and `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from `f64`.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 converts to every Scalar")
    }

    /// Lossy conversion from a count.
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize converts to every Scalar")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("Scalar converts to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Neumaier-compensated sum. Reduction order only affects the result at the
/// level of the final rounding.
pub fn compensated_sum<F: Scalar, I: IntoIterator<Item = F>>(values: I) -> F {
    let mut sum = F::zero();
    let mut carry = F::zero();
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            carry = carry + ((sum - t) + x);
        } else {
            carry = carry + ((x - t) + sum);
        }
        sum = t;
    }
    sum + carry
}
