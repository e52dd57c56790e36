use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use super::integer::{is_prime_u64, multiplicity};
use super::{ArithError, Field, Rational};

/// The p-adic valuation of a rational number; `value` is `None` for zero
/// (valuation +∞).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Valuation {
    pub prime: u64,
    pub value: Option<i64>,
}

impl Valuation {
    pub fn is_infinite(&self) -> bool {
        self.value.is_none()
    }

    /// `|x|_p = p^(-v_p(x))`, or zero for x = 0.
    pub fn abs_value(&self) -> Rational {
        match self.value {
            None => Rational::zero(),
            Some(v) => Rational::from_int(self.prime as i64)
                .powi(-(v as i32))
                .expect("prime is nonzero"),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            None => write!(f, "v_{}=+inf", self.prime),
            Some(v) => write!(f, "v_{}={}", self.prime, v),
        }
    }
}

pub fn p_adic_valuation(x: &Rational, p: u64) -> Result<Valuation, ArithError> {
    if !is_prime_u64(p) {
        return Err(ArithError::NotPrime(p));
    }
    Ok(Valuation {
        prime: p,
        value: valuation_unchecked(x, &BigUint::from(p)),
    })
}

/// Valuation at a prime known to be prime; `None` for zero.
pub(crate) fn valuation_unchecked(x: &Rational, p: &BigUint) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(multiplicity(x.numer(), p) as i64 - multiplicity(x.denom(), p) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn two_adic_bounds() {
        let v = p_adic_valuation(&q("1/128"), 2).unwrap();
        assert_eq!(v.value, Some(-7));
        assert_eq!(v.abs_value(), q("128"));
        assert_eq!(p_adic_valuation(&q("32768"), 2).unwrap().value, Some(15));
    }

    #[test]
    fn zero_has_infinite_valuation() {
        let v = p_adic_valuation(&q("0"), 5).unwrap();
        assert!(v.is_infinite());
        assert_eq!(v.abs_value(), q("0"));
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(p_adic_valuation(&q("3"), 4), Err(ArithError::NotPrime(4)));
        assert_eq!(p_adic_valuation(&q("3"), 1), Err(ArithError::NotPrime(1)));
    }

    #[test]
    fn mixed_primes() {
        assert_eq!(p_adic_valuation(&q("-45/14"), 3).unwrap().value, Some(2));
        assert_eq!(p_adic_valuation(&q("-45/14"), 7).unwrap().value, Some(-1));
        assert_eq!(p_adic_valuation(&q("-45/14"), 11).unwrap().value, Some(0));
    }
}
