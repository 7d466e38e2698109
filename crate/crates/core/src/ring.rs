//! The exact-ring contract shared by every coefficient type.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::Rational;

/// A commutative ring with exact arithmetic and exact equality.
///
/// Arithmetic goes through references because every implementor here owns
/// heap-allocated big integers.
pub trait ExactRing: Clone + PartialEq + Debug + Send + Sync {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn from_i64(n: i64) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn is_one_elem(&self) -> bool {
        *self == Self::one_elem()
    }

    fn scale_i64(&self, n: i64) -> Self {
        self.mul_ref(&Self::from_i64(n))
    }
}

/// Rings in which nonzero integers are invertible (characteristic zero
/// algebras over the rationals). Needed by `exp` and `log` of series.
pub trait IntDivisible: ExactRing {
    /// Panics if `n == 0`.
    fn div_i64(&self, n: i64) -> Self;

    fn scale_rational(&self, q: &Rational) -> Self;
}

impl ExactRing for Rational {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(n.into())
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl IntDivisible for Rational {
    fn div_i64(&self, n: i64) -> Self {
        assert!(n != 0, "division by zero");
        self / Rational::from_integer(n.into())
    }
    fn scale_rational(&self, q: &Rational) -> Self {
        self * q
    }
}
