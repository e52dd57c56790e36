//! Normal forms under the substitutions `x ↦ ±x + c`, `c ∈ ℤ`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::ClassifyError;
use crate::arith::Rational;
use crate::poly::Poly;

/// The representative of `d` in its orbit, with `canonical(x) = d(σx + c)`
/// up to the sign `σⁿ` that keeps it monic. Equality and order look only
/// at the polynomial.
#[derive(Debug, Clone, Serialize)]
pub struct CanonicalQuartic {
    pub poly: Poly<Rational>,
    pub sign: i8,
    #[serde(serialize_with = "crate::report::display_str")]
    pub shift: BigInt,
}

impl CanonicalQuartic {
    /// Coefficients below the leading one, highest degree first.
    pub fn key(&self) -> Vec<Rational> {
        descending_tail(&self.poly)
    }
}

impl PartialEq for CanonicalQuartic {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}

impl Eq for CanonicalQuartic {}

impl std::hash::Hash for CanonicalQuartic {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.poly.hash(h);
    }
}

impl Ord for CanonicalQuartic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.poly
            .degree()
            .cmp(&other.poly.degree())
            .then_with(|| self.key().cmp(&other.key()))
    }
}

impl PartialOrd for CanonicalQuartic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CanonicalQuartic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

fn descending_tail(p: &Poly<Rational>) -> Vec<Rational> {
    let mut c: Vec<Rational> = p.coeffs().to_vec();
    c.pop();
    c.reverse();
    c
}

/// For each sign, shifts so that the coefficient of `x^(n-1)` lies in
/// `0..n`, then keeps the lexicographically largest coefficient tuple.
pub fn canonicalize(d: &Poly<Rational>) -> Result<CanonicalQuartic, ClassifyError> {
    let n = match d.degree() {
        Some(n) if n >= 1 && d.is_monic() && d.is_integral() => n,
        _ => return Err(ClassifyError::NotMonicIntegral(d.to_string())),
    };
    let nn = BigInt::from(n as u64);
    let mut best: Option<(Vec<Rational>, CanonicalQuartic)> = None;
    for sign in [1i8, -1] {
        let e = if sign == 1 {
            d.clone()
        } else {
            let r = d.scale_var(&Rational::from_int(-1));
            if n % 2 == 1 {
                -r
            } else {
                r
            }
        };
        let top = e.coeff(n - 1).to_integer().expect("integral");
        // Shifting by k adds n·k to the coefficient of x^(n-1).
        let k = -top.div_floor(&nn);
        let poly = e.shift(&Rational::from_int(k.clone()));
        let key = descending_tail(&poly);
        // d(σ(x + k)) = d(σx + σk).
        let shift = if sign == 1 { k } else { -k };
        let cand = CanonicalQuartic { poly, sign, shift };
        if best.as_ref().is_none_or(|(bk, _)| key > *bk) {
            best = Some((key, cand));
        }
    }
    Ok(best.expect("two candidates").1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type P = Poly<Rational>;

    fn p(s: &str) -> P {
        s.parse().unwrap()
    }

    #[test]
    fn sign_variants_agree() {
        let d1 = p("x^4 + 2*x^3 - 7*x^2 - 4*x + 10");
        let d2 = p("x^4 + 2*x^3 - 7*x^2 - 12*x + 6");
        let c1 = canonicalize(&d1).unwrap();
        assert_eq!(c1.poly, d1);
        assert_eq!(canonicalize(&d2).unwrap().poly, d1);
        assert_eq!(canonicalize(&d1.shift(&Rational::from_int(7))).unwrap().poly, d1);
    }

    #[test]
    fn records_the_substitution() {
        let d = p("x^4 - 2*x^3 - 7*x^2 + 4*x + 10");
        let c = canonicalize(&d).unwrap();
        let back = d
            .scale_var(&Rational::from_int(c.sign as i64))
            .shift(&Rational::from_int(c.shift.clone() * BigInt::from(c.sign)));
        assert_eq!(back, c.poly);
    }

    #[test]
    fn cubic_term_in_range() {
        let c = canonicalize(&p("x^2*(x^2 - 2*x - 1)")).unwrap();
        assert_eq!(c.poly, p("x^4 + 2*x^3 - x^2"));
        assert!(canonicalize(&p("2*x^4 + 1")).is_err());
        assert!(canonicalize(&p("x^4 + 1/2")).is_err());
    }

    fn arb_quartic() -> impl Strategy<Value = P> {
        prop::collection::vec(-20i64..20, 4).prop_map(|mut c| {
            c.push(1);
            P::from_ints(&c)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn constant_on_orbits(d in arb_quartic(), neg in any::<bool>(), c in -5i64..=5) {
            let s = if neg { -1 } else { 1 };
            let e = d.scale_var(&Rational::from_int(s)).shift(&Rational::from_int(c * s));
            prop_assert_eq!(canonicalize(&d).unwrap().poly, canonicalize(&e).unwrap().poly);
        }

        #[test]
        fn idempotent(d in arb_quartic()) {
            let c = canonicalize(&d).unwrap();
            let cc = canonicalize(&c.poly).unwrap();
            let top = c.poly.coeff(3).to_integer().unwrap();
            prop_assert!(top >= BigInt::from(0) && top < BigInt::from(4));
            prop_assert_eq!(cc.poly, c.poly);
        }
    }
}
