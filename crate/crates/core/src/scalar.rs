//! Exact scalar types accepted by the tensor algebra.
//!
//! Everything in this crate is generic over [`Scalar`]. Only exact types
//! implement it.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive};

pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    /// Exact conversion into an arbitrary-precision rational.
    fn to_rational(&self) -> BigRational;

    fn is_integer(&self) -> bool;

    /// `Some(v)` when the value is a nonnegative integer that fits in `u64`.
    fn to_natural(&self) -> Option<u64>;

    /// Parses an integer `p` or a fraction `p/q`.
    fn parse_exact(s: &str) -> Option<Self>;

    fn from_natural(v: u64) -> Self {
        Self::from_u64(v).expect("every scalar type represents small naturals")
    }

    fn is_binary(&self) -> bool {
        self.is_zero() || self.is_one()
    }
}

impl Scalar for BigRational {
    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn is_integer(&self) -> bool {
        self.denom().is_one()
    }

    fn to_natural(&self) -> Option<u64> {
        if self.is_integer() {
            self.numer().to_u64()
        } else {
            None
        }
    }

    fn parse_exact(s: &str) -> Option<Self> {
        BigRational::from_str(s).ok()
    }
}

impl Scalar for Rational64 {
    fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }

    fn is_integer(&self) -> bool {
        Rational64::is_integer(self)
    }

    fn to_natural(&self) -> Option<u64> {
        if Rational64::is_integer(self) {
            self.numer().to_u64()
        } else {
            None
        }
    }

    fn parse_exact(s: &str) -> Option<Self> {
        Rational64::from_str(s).ok()
    }
}

impl Scalar for BigInt {
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }

    fn is_integer(&self) -> bool {
        true
    }

    fn to_natural(&self) -> Option<u64> {
        self.to_u64()
    }

    fn parse_exact(s: &str) -> Option<Self> {
        BigInt::from_str(s).ok()
    }
}

impl Scalar for i64 {
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(*self))
    }

    fn is_integer(&self) -> bool {
        true
    }

    fn to_natural(&self) -> Option<u64> {
        u64::try_from(*self).ok()
    }

    fn parse_exact(s: &str) -> Option<Self> {
        i64::from_str(s).ok()
    }
}

/// `x^m` by repeated multiplication.
pub fn pow<T: Scalar>(x: &T, m: usize) -> T {
    num_traits::pow(x.clone(), m)
}
