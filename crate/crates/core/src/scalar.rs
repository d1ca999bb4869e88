//! Coefficient types accepted by the series algebra.

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

/// A field-like scalar usable as a power-series coefficient.
///
/// Implemented for `f32`, `f64` and [`crate::Rational`]. Only the rational
/// instance is exact; the float instances exist for quick numerical previews.
pub trait Scalar:
    Clone + Debug + PartialEq + Num + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    /// Lossless embedding of a small integer.
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("small integers are representable in every scalar")
    }

    /// `n^e` for a possibly negative exponent; `n` must be nonzero when `e < 0`.
    fn int_pow(n: i64, e: i64) -> Self {
        let base = Self::from_int(n);
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * base.clone();
        }
        if e < 0 {
            Self::one() / acc
        } else {
            acc
        }
    }

    /// `n!` as a scalar.
    fn factorial(n: usize) -> Self {
        (1..=n as i64).fold(Self::one(), |acc, i| acc * Self::from_int(i))
    }
}

impl<T> Scalar for T where
    T: Clone + Debug + PartialEq + Num + Neg<Output = T> + FromPrimitive + Send + Sync + 'static
{
}
