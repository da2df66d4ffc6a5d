//! Minimal commutative-ring abstraction shared by the polynomial and matrix
//! kernels.
//!
//! Elements carry their own context (the prime, the precision) so that
//! generic code can create zeros and ones without a separate parent object.

use core::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub trait Ring: Clone + PartialEq + Debug {
    type Ctx: Clone + PartialEq + Debug;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    /// Image of an integer under the canonical map `Z -> R`.
    fn from_int(ctx: &Self::Ctx, n: i64) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

/// An integral domain in which exact division (`a / b` when `b | a`) is
/// computable. Fraction-free elimination only needs this.
pub trait Domain: Ring {
    fn div_exact(&self, rhs: &Self) -> Self;
}

pub trait Field: Domain {
    fn inverse(&self) -> Option<Self>;
}

impl Ring for i64 {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero(_: &()) -> Self {
        0
    }
    fn one(_: &()) -> Self {
        1
    }
    fn from_int(_: &(), n: i64) -> Self {
        n
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl Domain for i64 {
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self % rhs, 0);
        self / rhs
    }
}

impl Ring for BigInt {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero(_: &()) -> Self {
        <BigInt as num_traits::Zero>::zero()
    }
    fn one(_: &()) -> Self {
        <BigInt as num_traits::One>::one()
    }
    fn from_int(_: &(), n: i64) -> Self {
        BigInt::from(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl Domain for BigInt {
    fn div_exact(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl Ring for BigRational {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero(_: &()) -> Self {
        <BigRational as num_traits::Zero>::zero()
    }
    fn one(_: &()) -> Self {
        <BigRational as num_traits::One>::one()
    }
    fn from_int(_: &(), n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl Domain for BigRational {
    fn div_exact(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl Field for BigRational {
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// `a/b` as an exact rational.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Least common multiple of the denominators of `values`.
pub fn denominator_lcm(values: &[BigRational]) -> BigInt {
    values.iter().fold(<BigInt as num_traits::One>::one(), |acc, v| {
        let d = v.denom().abs();
        num_integer::Integer::lcm(&acc, &d)
    })
}
