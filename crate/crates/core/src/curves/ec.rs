//! Short Weierstrass curves and the chord-tangent group law.

use std::fmt;

use serde::{Serialize, Serializer};

use super::CurveError;
use crate::arith::Field;

/// `y² = x³ + Ax + B` with `4A³ + 27B² ≠ 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ShortWeierstrass<F> {
    a: F,
    b: F,
}

impl<F: Field> ShortWeierstrass<F> {
    pub fn new(a: F, b: F) -> Result<Self, CurveError> {
        let disc = F::from_i64(4) * a.pow(3) + F::from_i64(27) * b.pow(2);
        if disc.is_zero() {
            return Err(CurveError::Singular {
                a: a.to_string(),
                b: b.to_string(),
            });
        }
        Ok(ShortWeierstrass { a, b })
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn b(&self) -> &F {
        &self.b
    }

    pub fn contains(&self, x: &F, y: &F) -> bool {
        y.pow(2) == x.pow(3) + self.a.clone() * x.clone() + self.b.clone()
    }

    /// The isomorphic model `(A/u⁴, B/u⁶)`, with points mapped by
    /// `(x, y) ↦ (x/u², y/u³)`.
    pub fn rescale(&self, u: &F) -> Result<Self, CurveError> {
        let u2 = u.pow(2);
        let a = self.a.div(&u2.pow(2))?;
        let b = self.b.div(&u2.pow(3))?;
        Self::new(a, b)
    }
}

impl<F: Field> fmt::Display for ShortWeierstrass<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})*x + ({})", self.a, self.b)
    }
}

impl<F: Field> Serialize for ShortWeierstrass<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ShortWeierstrass", 2)?;
        st.serialize_field("A", &self.a.to_string())?;
        st.serialize_field("B", &self.b.to_string())?;
        st.end()
    }
}

/// A point on a particular curve; `coords` is `None` at infinity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EcPoint<F> {
    curve: ShortWeierstrass<F>,
    coords: Option<(F, F)>,
}

impl<F: Field> EcPoint<F> {
    pub fn new(curve: &ShortWeierstrass<F>, x: F, y: F) -> Result<Self, CurveError> {
        if !curve.contains(&x, &y) {
            return Err(CurveError::NotOnCurve {
                x: x.to_string(),
                y: y.to_string(),
            });
        }
        Ok(EcPoint {
            curve: curve.clone(),
            coords: Some((x, y)),
        })
    }

    pub fn infinity(curve: &ShortWeierstrass<F>) -> Self {
        EcPoint {
            curve: curve.clone(),
            coords: None,
        }
    }

    pub fn curve(&self) -> &ShortWeierstrass<F> {
        &self.curve
    }

    pub fn coords(&self) -> Option<&(F, F)> {
        self.coords.as_ref()
    }

    pub fn is_infinity(&self) -> bool {
        self.coords.is_none()
    }

    pub fn neg(&self) -> Self {
        EcPoint {
            curve: self.curve.clone(),
            coords: self.coords.clone().map(|(x, y)| (x, -y)),
        }
    }
}

impl<F: Field> fmt::Display for EcPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.coords {
            None => write!(f, "O"),
            Some((x, y)) => write!(f, "({x}, {y})"),
        }
    }
}

impl<F: Field> Serialize for EcPoint<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match &self.coords {
            None => s.serialize_str("infinity"),
            Some((x, y)) => [x.to_string(), y.to_string()].serialize(s),
        }
    }
}

pub fn ec_add<F: Field>(p: &EcPoint<F>, q: &EcPoint<F>) -> Result<EcPoint<F>, CurveError> {
    if p.curve != q.curve {
        return Err(CurveError::CurveMismatch);
    }
    let (x1, y1) = match &p.coords {
        None => return Ok(q.clone()),
        Some(c) => c,
    };
    let (x2, y2) = match &q.coords {
        None => return Ok(p.clone()),
        Some(c) => c,
    };
    let lambda = if x1 == x2 {
        if (y1.clone() + y2.clone()).is_zero() {
            return Ok(EcPoint::infinity(&p.curve));
        }
        let num = F::from_i64(3) * x1.pow(2) + p.curve.a.clone();
        num.div(&(F::from_i64(2) * y1.clone()))?
    } else {
        (y2.clone() - y1.clone()).div(&(x2.clone() - x1.clone()))?
    };
    let x3 = lambda.pow(2) - x1.clone() - x2.clone();
    let y3 = lambda * (x1.clone() - x3.clone()) - y1.clone();
    Ok(EcPoint {
        curve: p.curve.clone(),
        coords: Some((x3, y3)),
    })
}

/// `n·P` by double-and-add; negative `n` multiplies `-P`.
pub fn ec_multiply<F: Field>(p: &EcPoint<F>, n: i64) -> Result<EcPoint<F>, CurveError> {
    let mut base = if n < 0 { p.neg() } else { p.clone() };
    let mut e = n.unsigned_abs();
    let mut acc = EcPoint::infinity(&p.curve);
    while e > 0 {
        if e & 1 == 1 {
            acc = ec_add(&acc, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = ec_add(&base, &base)?;
        }
    }
    Ok(acc)
}

/// Largest possible order of a rational torsion point (Mazur).
pub const MAX_TORSION: u32 = 12;

/// The least `n ≤ 12` with `n·P = O`; `None` means infinite order over ℚ.
pub fn torsion_order<F: Field>(p: &EcPoint<F>) -> Option<u32> {
    let mut q = p.clone();
    for n in 1..=MAX_TORSION {
        if q.is_infinity() {
            return Some(n);
        }
        q = ec_add(&q, p).ok()?;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn curve(a: &str, b: &str) -> ShortWeierstrass<Rational> {
        ShortWeierstrass::new(q(a), q(b)).unwrap()
    }

    #[test]
    fn identity_and_inverse() {
        let e = curve("0", "1");
        let p = EcPoint::new(&e, q("2"), q("3")).unwrap();
        let o = EcPoint::infinity(&e);
        assert_eq!(ec_add(&p, &o).unwrap(), p);
        assert_eq!(ec_add(&o, &p).unwrap(), p);
        assert!(ec_add(&p, &p.neg()).unwrap().is_infinity());
    }

    #[test]
    fn torsion_on_y2_x3_plus_1() {
        // The rational points of y² = x³ + 1 form a cyclic group of order 6.
        let e = curve("0", "1");
        let p = EcPoint::new(&e, q("2"), q("3")).unwrap();
        assert_eq!(torsion_order(&p), Some(6));
        assert_eq!(torsion_order(&EcPoint::new(&e, q("0"), q("1")).unwrap()), Some(3));
        assert_eq!(torsion_order(&EcPoint::new(&e, q("-1"), q("0")).unwrap()), Some(2));
        assert_eq!(torsion_order(&EcPoint::infinity(&e)), Some(1));
        assert_eq!(ec_multiply(&p, -1).unwrap(), p.neg());
        assert!(ec_multiply(&p, 6).unwrap().is_infinity());
    }

    #[test]
    fn infinite_order_point() {
        // (3, 5) generates the rational points of y² = x³ - 2.
        let e = curve("0", "-2");
        let p = EcPoint::new(&e, q("3"), q("5")).unwrap();
        assert_eq!(torsion_order(&p), None);
        for n in 1..=12 {
            assert!(!ec_multiply(&p, n).unwrap().is_infinity());
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(ShortWeierstrass::new(q("0"), q("0")), Err(CurveError::Singular { .. })));
        let e = curve("0", "1");
        assert!(matches!(EcPoint::new(&e, q("1"), q("1")), Err(CurveError::NotOnCurve { .. })));
        let f = curve("1", "1");
        let p = EcPoint::new(&e, q("0"), q("1")).unwrap();
        let r = EcPoint::new(&f, q("0"), q("1")).unwrap();
        assert_eq!(ec_add(&p, &r), Err(CurveError::CurveMismatch));
    }

    #[test]
    fn rescaling_preserves_order() {
        let e = curve("0", "1");
        for u in ["2", "3", "1/2"] {
            let u = q(u);
            let e2 = e.rescale(&u).unwrap();
            let p = EcPoint::new(&e2, q("2") / (&u * &u), q("3") / (&(&u * &u) * &u)).unwrap();
            assert_eq!(torsion_order(&p), Some(6));
        }
    }
}
