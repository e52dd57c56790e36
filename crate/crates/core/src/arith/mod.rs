//! Exact arithmetic foundations: rationals, the rational function field
//! ℚ(a) and p-adic valuations.

pub mod integer;
mod ratfun;
mod rational;
mod valuation;

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::poly::Poly;

pub use ratfun::RatFun;
pub use rational::Rational;
pub use valuation::{p_adic_valuation, Valuation};
pub(crate) use valuation::valuation_unchecked;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),
}

/// A field of characteristic zero with exact, canonical elements.
///
/// Elements are normalized on construction, so `==` and `Hash` agree with
/// mathematical equality. Both implementations are immutable values.
pub trait Field:
    Clone
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_int(n))
    }

    fn inv(&self) -> Result<Self, ArithError>;

    fn div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self.clone() * other.inv()?)
    }

    /// A square root inside the field, if one exists.
    fn sqrt(&self) -> Option<Self>;

    /// Canonical sign used to pick one of ±x. For ℚ this is the usual sign.
    fn is_negative(&self) -> bool;

    /// The value as a rational constant, when it is one.
    fn as_rational(&self) -> Option<Rational>;

    /// Locus in the parameter line where this element has a pole.
    /// Always `None` over ℚ.
    fn pole_locus(&self) -> Option<Poly<Rational>> {
        None
    }

    /// Locus in the parameter line where this element vanishes.
    /// Always `None` over ℚ.
    fn vanishing_locus(&self) -> Option<Poly<Rational>> {
        None
    }

    /// Returns `(negative, text)` for use as a polynomial coefficient: the
    /// text is the absolute value, parenthesized when it is a compound
    /// expression.
    fn coeff_text(&self) -> (bool, String);

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}
