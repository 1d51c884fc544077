//! The scalar abstraction shared by the linear algebra and free-algebra layers.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational number with arbitrary-precision numerator and denominator.
///
/// `BigRational` keeps itself reduced with a positive denominator after every
/// operation, which is the canonical form all serialized scalars use.
pub type Rational = BigRational;

/// An exact field with decidable zero test.
///
/// Everything that computes ranks, kernels or dimensions is generic over this
/// trait. Floating-point types are deliberately not implementors: a rank that
/// depends on a tolerance is not a dimension.
pub trait Field:
    Sized
    + Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// Embeds a machine integer.
    fn from_i64(n: i64) -> Self;

    /// `self * other` without consuming either side.
    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other
    }
}

impl Field for BigRational {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// Shorthand for the rational `num / den`.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}
