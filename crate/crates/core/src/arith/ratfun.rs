use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{ArithError, Field, Rational};
use crate::poly::Poly;

/// An element of ℚ(a): a reduced fraction of polynomials in `a` with a
/// monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly<Rational>,
    den: Poly<Rational>,
}

impl RatFun {
    pub fn new(num: Poly<Rational>, den: Poly<Rational>) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly<Rational>, den: Poly<Rational>) -> Self {
        if num.is_zero() {
            return RatFun {
                num,
                den: Poly::one(),
            };
        }
        let g = num.gcd_primitive(&den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        let l = den.lead().expect("nonzero").clone();
        if !l.is_one() {
            let li = l.recip().expect("nonzero");
            num = num.scale(&li);
            den = den.scale(&li);
        }
        RatFun { num, den }
    }

    pub fn from_poly(p: Poly<Rational>) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    /// The indeterminate `a`.
    pub fn param() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn numer(&self) -> &Poly<Rational> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<Rational> {
        &self.den
    }

    /// Value at `a = t`; an error when `t` is a pole.
    pub fn eval(&self, t: &Rational) -> Result<Rational, ArithError> {
        let d = self.den.eval(t);
        Field::div(&self.num.eval(t), &d)
    }

    /// Writes the element as `N/D` with `N, D ∈ ℤ[a]`, `D` primitive with
    /// positive leading coefficient.
    pub fn integer_parts(&self) -> (Poly<Rational>, Poly<Rational>) {
        let (_, dz) = self.den.primitive_integer();
        let d = Poly::from_integers(&dz);
        let lam = d.lead().unwrap().clone();
        // num/den = (num * lam)/d since den is monic.
        let n = self.num.scale(&lam);
        let lcm = n
            .coeffs()
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let k = Rational::from_int(lcm);
        (n.scale(&k), d.scale(&k))
    }
}

fn needs_parens(p: &Poly<Rational>, is_den: bool) -> bool {
    let terms = p.coeffs().iter().filter(|c| !c.is_zero()).count();
    if terms > 1 {
        return true;
    }
    // A single term needs parentheses in a denominator unless it is a bare
    // integer or a bare power of the variable.
    is_den && !(p.is_constant() || p.lead().is_some_and(|c| c.is_one()))
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num.display_with("a"));
        }
        let (n, d) = self.integer_parts();
        let nt = n.display_with("a").to_string();
        let dt = d.display_with("a").to_string();
        if needs_parens(&n, false) {
            write!(f, "({nt})")?;
        } else {
            write!(f, "{nt}")?;
        }
        if needs_parens(&d, true) {
            write!(f, "/({dt})")
        } else {
            write!(f, "/{dt}")
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Field for RatFun {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }
    fn from_rational(q: &Rational) -> Self {
        Self::from_poly(Poly::constant(q.clone()))
    }
    fn inv(&self) -> Result<Self, ArithError> {
        if self.num.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }
    fn sqrt(&self) -> Option<Self> {
        let n = self.num.sqrt_exact()?;
        let d = self.den.sqrt_exact()?;
        Some(Self::normalized(n, d))
    }
    fn is_negative(&self) -> bool {
        self.num.lead().is_some_and(|c| c.is_negative())
    }
    fn as_rational(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }
    fn pole_locus(&self) -> Option<Poly<Rational>> {
        (!self.den.is_constant()).then(|| self.den.clone())
    }
    fn vanishing_locus(&self) -> Option<Poly<Rational>> {
        (!self.num.is_constant()).then(|| self.num.clone())
    }
    fn coeff_text(&self) -> (bool, String) {
        let neg = self.is_negative();
        let abs = if neg { -self.clone() } else { self.clone() };
        if let Some(q) = abs.as_rational() {
            return (neg, q.to_string());
        }
        let text = abs.to_string();
        let single_term = abs.den.is_one()
            && abs.num.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
        if single_term {
            (neg, text)
        } else {
            (neg, format!("({text})"))
        }
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        if self.den == rhs.den {
            return Self::normalized(&self.num + &rhs.num, self.den);
        }
        Self::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, rhs: RatFun) -> RatFun {
        self + (-rhs)
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Self::zero();
        }
        Self::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -self.num,
            den: self.den,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pa(s: &str) -> Poly<Rational> {
        Poly::parse_in(s, "a").unwrap()
    }

    fn rf(n: &str, d: &str) -> RatFun {
        RatFun::new(pa(n), pa(d)).unwrap()
    }

    #[test]
    fn cancels_common_factors() {
        let r = rf("a^2 - 1", "a - 1");
        assert_eq!(r, RatFun::from_poly(pa("a + 1")));
        assert_eq!(r.to_string(), "a + 1");
        let s = rf("2*a", "4*a^2 + 4*a");
        assert_eq!(s.denom(), &pa("a + 1"));
        assert_eq!(s.numer(), &pa("1/2"));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RatFun::new(pa("a"), pa("0")), Err(ArithError::DivisionByZero));
        assert_eq!(RatFun::zero().inv(), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn square_roots() {
        assert_eq!(
            RatFun::from_poly(pa("a^2 + 2*a + 1")).sqrt(),
            Some(RatFun::from_poly(pa("a + 1")))
        );
        assert_eq!(rf("4", "a^2").sqrt(), Some(rf("2", "a")));
        assert_eq!(RatFun::from_poly(pa("-64*a")).sqrt(), None);
        assert_eq!(RatFun::from_i64(-1).sqrt(), None);
    }

    #[test]
    fn display_forms() {
        assert_eq!(rf("1", "16*a").to_string(), "1/(16*a)");
        assert_eq!(rf("4*a - 1", "32*a").to_string(), "(4*a - 1)/(32*a)");
        assert_eq!(rf("-1", "512*a^3").to_string(), "-1/(512*a^3)");
        assert_eq!(rf("a", "a^2 - 1").to_string(), "a/(a^2 - 1)");
        let p: Poly<RatFun> = Poly::new(vec![rf("-1", "16*a"), rf("1", "16*a")]);
        assert_eq!(p.to_string(), "(1/(16*a))*x - (1/(16*a))");
    }

    #[test]
    fn evaluation() {
        let r = rf("a + 1", "a - 2");
        assert_eq!(r.eval(&"4".parse().unwrap()).unwrap(), "5/2".parse().unwrap());
        assert!(r.eval(&"2".parse().unwrap()).is_err());
    }

    #[test]
    fn field_laws_sample() {
        let x = rf("a^2 + 3", "a - 5");
        let y = rf("7*a", "a^2 + 1");
        let z = rf("a - 1/2", "3");
        assert_eq!((x.clone() + y.clone()) * z.clone(), x.clone() * z.clone() + y.clone() * z.clone());
        assert_eq!(x.clone() * x.inv().unwrap(), RatFun::one());
        assert_eq!((x.clone() - x.clone()), RatFun::zero());
        assert_eq!(Field::div(&(x.clone() * y.clone()), &y).unwrap(), x);
    }
}
