//! Elliptic curves attached to quartics: Tate normal form, Kubert's
//! torsion parametrizations, short Weierstrass models and the
//! quartic-to-curve dictionary.

mod ec;
mod family;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{ArithError, Field, RatFun, Rational};
use crate::poly::Poly;

pub use ec::{ec_add, ec_multiply, torsion_order, EcPoint, ShortWeierstrass, MAX_TORSION};
pub use family::{
    adams_razar_curve, check_period_torsion, cross_validate, depress, family_quartic, quartic_from_curve,
    CrossCheck, ParamFamily, PeriodTorsion, TORSION_ORDERS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("torsion order {0} is not one of 4..=10, 12")]
    UnsupportedOrder(u32),
    #[error("degenerate parameter: {factor} vanishes")]
    Degenerate { factor: String },
    #[error("singular curve y^2 = x^3 + ({a})x + ({b})")]
    Singular { a: String, b: String },
    #[error("point ({x}, {y}) is not on the curve")]
    NotOnCurve { x: String, y: String },
    #[error("points lie on different curves")]
    CurveMismatch,
    #[error("expected a monic quartic without cubic term, got {0}")]
    NotDepressedQuartic(String),
    #[error("{0} is not square-free")]
    NotSquarefree(String),
    #[error("the scale parameter b must be nonzero")]
    ZeroScale,
    #[error("no period within {0} steps")]
    NoPeriod(usize),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// `y² + (1-c)xy - by = x³ - bx²`, with marked point (0, 0).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TateCurve<F: Field> {
    #[serde(serialize_with = "display_str")]
    pub b: F,
    #[serde(serialize_with = "display_str")]
    pub c: F,
}

fn display_str<F: Field, S: serde::Serializer>(x: &F, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

impl<F: Field> TateCurve<F> {
    /// `Δ(b,c) = b³(16b² - 8bc² - 20bc + b + c⁴ - 3c³ + 3c² - c)`.
    pub fn discriminant(&self) -> F {
        let (b, c) = (&self.b, &self.c);
        let k = |n: i64| F::from_i64(n);
        let inner = k(16) * b.pow(2) - k(8) * b.clone() * c.pow(2) - k(20) * b.clone() * c.clone()
            + b.clone()
            + c.pow(4)
            - k(3) * c.pow(3)
            + k(3) * c.pow(2)
            - c.clone();
        b.pow(3) * inner
    }

    pub fn new(b: F, c: F) -> Result<Self, CurveError> {
        let t = TateCurve { b, c };
        if t.b.is_zero() {
            return Err(CurveError::Degenerate { factor: "b".into() });
        }
        if t.discriminant().is_zero() {
            return Err(CurveError::Degenerate {
                factor: "16b^2 - 8bc^2 - 20bc + b + c^4 - 3c^3 + 3c^2 - c".into(),
            });
        }
        Ok(t)
    }

    /// Long Weierstrass coefficients `(a1, a2, a3, a4, a6)`.
    pub fn long_coefficients(&self) -> [F; 5] {
        [
            F::one() - self.c.clone(),
            -self.b.clone(),
            -self.b.clone(),
            F::zero(),
            F::zero(),
        ]
    }
}

/// Kubert's `(b, c)` for a point of order `m` as a function of `t`.
pub fn kubert_params<F: Field>(m: u32, t: &F) -> Result<TateCurve<F>, CurveError> {
    let k = |n: i64| F::from_i64(n);
    let t = t.clone();
    let nonzero = |x: F, name: &str| -> Result<F, CurveError> {
        if x.is_zero() {
            Err(CurveError::Degenerate { factor: name.into() })
        } else {
            Ok(x)
        }
    };
    let (b, c) = match m {
        4 => (t.clone(), F::zero()),
        5 => (t.clone(), t.clone()),
        6 => (t.clone() * (t.clone() + F::one()), t.clone()),
        7 => (t.pow(2) * (t.clone() - F::one()), t.clone() * (t.clone() - F::one())),
        8 => {
            let t = nonzero(t, "t")?;
            let bb = (k(2) * t.clone() - F::one()) * (t.clone() - F::one());
            (bb.clone(), bb.div(&t)?)
        }
        9 => {
            let c = t.pow(2) * (t.clone() - F::one());
            (c.clone() * (t.pow(2) - t.clone() + F::one()), c)
        }
        10 => {
            let den = nonzero(t.pow(2) - k(3) * t.clone() + F::one(), "t^2 - 3t + 1")?;
            let c = -(t.clone() * (t.clone() - F::one()) * (k(2) * t.clone() - F::one())).div(&den)?;
            let b = (t.pow(3) * (t.clone() - F::one()) * (k(2) * t.clone() - F::one())).div(&den.pow(2))?;
            (b, c)
        }
        12 => {
            let den = nonzero(t.clone() - F::one(), "t - 1")?;
            let common = t.clone() * (k(2) * t.clone() - F::one()) * (k(3) * t.pow(2) - k(3) * t.clone() + F::one());
            let c = -common.div(&den.pow(3))?;
            let b = (common * (k(2) * t.pow(2) - k(2) * t.clone() + F::one())).div(&den.pow(4))?;
            (b, c)
        }
        _ => return Err(CurveError::UnsupportedOrder(m)),
    };
    TateCurve::new(b, c)
}

/// Completes the square and removes the quadratic term: `(x, y) ↦
/// (x + b2/12, y + (a1·x + a3)/2)`, giving `A = -c4/48`, `B = -c6/864`.
/// Returns the short model and the image of (0, 0).
pub fn tate_to_short<F: Field>(tc: &TateCurve<F>) -> Result<(ShortWeierstrass<F>, EcPoint<F>), CurveError> {
    let k = |n: i64| F::from_i64(n);
    let [a1, a2, a3, a4, a6] = tc.long_coefficients();
    let b2 = a1.pow(2) + k(4) * a2;
    let b4 = k(2) * a4 + a1 * a3.clone();
    let b6 = a3.pow(2) + k(4) * a6;
    let c4 = b2.pow(2) - k(24) * b4.clone();
    let c6 = -b2.pow(3) + k(36) * b2.clone() * b4 - k(216) * b6;
    let a = -c4.div(&k(48))?;
    let b = -c6.div(&k(864))?;
    let curve = ShortWeierstrass::new(a, b)?;
    let x = b2.div(&k(12))?;
    let y = a3.div(&k(2))?;
    let point = EcPoint::new(&curve, x, y)?;
    Ok((curve, point))
}

/// Substitutes `a = t` into every coefficient of a polynomial over ℚ(a).
pub fn specialize(p: &Poly<RatFun>, t: &Rational) -> Result<Poly<Rational>, ArithError> {
    let coeffs = p.coeffs().iter().map(|c| c.eval(t)).collect::<Result<Vec<_>, _>>()?;
    Ok(Poly::new(coeffs))
}
