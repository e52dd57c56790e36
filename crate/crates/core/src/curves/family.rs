//! The quartic ↔ curve dictionary and the per-order families of quartics
//! `x⁴ + r₂x² + r₁x + r₀` whose Jacobian point has a given torsion order.

use std::sync::OnceLock;

use serde::Serialize;

use super::{kubert_params, tate_to_short, torsion_order, CurveError, EcPoint, ShortWeierstrass};
use crate::arith::{Field, RatFun, Rational};
use crate::contfrac::cf_expand;
use crate::poly::Poly;

/// Torsion orders with a family of quartics.
pub const TORSION_ORDERS: [u32; 8] = [4, 5, 6, 7, 8, 9, 10, 12];

/// Coefficient formulas at `b = 1`; the full coefficient is `rᵢ(a)/b^wᵢ`
/// with weights `(2, 3, 4)`, which gives `d_{a,b}(x) = b⁻⁴ d_{a,1}(bx)`.
#[derive(Debug, Clone)]
pub struct ParamFamily {
    pub m: u32,
    pub r2: RatFun,
    pub r1: RatFun,
    pub r0: RatFun,
}

/// `(numerator, denominator)` text in `a` for r₂, r₁, r₀.
const ROWS: [(u32, [(&str, &str); 3]); 8] = [
    (4, [("8*a - 2", "1"), ("32*a", "1"), ("16*a^2 + 24*a + 1", "1")]),
    (
        5,
        [
            ("-2*a^2 + 12*a - 2", "1"),
            ("32*a", "1"),
            ("a^4 - 12*a^3 + 6*a^2 + 20*a + 1", "1"),
        ],
    ),
    (
        6,
        [
            ("6*a^2 + 12*a - 2", "1"),
            ("32*a^2 + 32*a", "1"),
            ("9*a^4 + 4*a^3 + 30*a^2 + 20*a + 1", "1"),
        ],
    ),
    (
        7,
        [
            ("-2*a^4 + 12*a^3 - 6*a^2 - 4*a - 2", "1"),
            ("32*a^3 - 32*a^2", "1"),
            ("a^8 - 12*a^7 + 42*a^6 - 64*a^5 + 51*a^4 - 22*a^2 + 4*a + 1", "1"),
        ],
    ),
    (
        8,
        [
            ("8*a^4 + 8*a^3 - 32*a^2 + 16*a - 2", "a^2"),
            ("64*a^2 - 96*a + 32", "1"),
            (
                "16*a^8 - 96*a^7 + 336*a^6 - 576*a^5 + 536*a^4 - 296*a^3 + 96*a^2 - 16*a + 1",
                "a^4",
            ),
        ],
    ),
    (
        9,
        [
            ("-2*a^6 + 12*a^5 - 18*a^4 + 20*a^3 - 12*a^2 - 2", "1"),
            ("32*a^5 - 64*a^4 + 64*a^3 - 32*a^2", "1"),
            (
                "a^12 - 12*a^11 + 54*a^10 - 128*a^9 + 181*a^8 - 156*a^7 + 82*a^6 - 4*a^5 - 42*a^4 + 44*a^3 - 20*a^2 + 1",
                "1",
            ),
        ],
    ),
    (
        10,
        [
            ("-8*a^6 + 32*a^5 - 16*a^4 - 16*a^3 + 8*a - 2", "(a^2 - 3*a + 1)^2"),
            ("64*a^5 - 96*a^4 + 32*a^3", "(a^2 - 3*a + 1)^2"),
            (
                "16*a^12 - 128*a^11 + 448*a^10 - 896*a^9 + 1024*a^8 - 416*a^7 - 408*a^6 + 608*a^5 - 304*a^4 + 48*a^3 + 16*a^2 - 8*a + 1",
                "(a^2 - 3*a + 1)^4",
            ),
        ],
    ),
    (
        12,
        [
            (
                "24*a^8 - 240*a^7 + 672*a^6 - 936*a^5 + 744*a^4 - 336*a^3 + 72*a^2 - 2",
                "(a - 1)^6",
            ),
            ("384*a^6 - 960*a^5 + 1088*a^4 - 672*a^3 + 224*a^2 - 32*a", "(a - 1)^4"),
            (
                "144*a^16 - 576*a^15 + 2112*a^14 - 9696*a^13 + 34016*a^12 - 82176*a^11 + 141936*a^10 - 181984*a^9 + 177240*a^8 - 132528*a^7 + 76096*a^6 - 33208*a^5 + 10760*a^4 - 2480*a^3 + 376*a^2 - 32*a + 1",
                "(a - 1)^12",
            ),
        ],
    ),
];

fn parse_ratfun(num: &str, den: &str) -> RatFun {
    let n = Poly::parse_in(num, "a").expect("table entry parses");
    let d = Poly::parse_in(den, "a").expect("table entry parses");
    RatFun::new(n, d).expect("nonzero denominator")
}

fn table() -> &'static [ParamFamily] {
    static TABLE: OnceLock<Vec<ParamFamily>> = OnceLock::new();
    TABLE.get_or_init(|| {
        ROWS.iter()
            .map(|(m, [r2, r1, r0])| ParamFamily {
                m: *m,
                r2: parse_ratfun(r2.0, r2.1),
                r1: parse_ratfun(r1.0, r1.1),
                r0: parse_ratfun(r0.0, r0.1),
            })
            .collect()
    })
}

impl ParamFamily {
    /// Exponents `w` with coefficient `rᵢ(a)/b^w`.
    pub const B_WEIGHTS: [i32; 3] = [2, 3, 4];

    pub fn get(m: u32) -> Result<&'static ParamFamily, CurveError> {
        table()
            .iter()
            .find(|f| f.m == m)
            .ok_or(CurveError::UnsupportedOrder(m))
    }

    pub fn all() -> &'static [ParamFamily] {
        table()
    }

    /// `[r₂, r₁, r₀]`.
    pub fn coefficients(&self) -> [&RatFun; 3] {
        [&self.r2, &self.r1, &self.r0]
    }

    /// The quartic over ℚ(a) at `b = 1`.
    pub fn symbolic_quartic(&self) -> Poly<RatFun> {
        Poly::new(vec![
            self.r0.clone(),
            self.r1.clone(),
            self.r2.clone(),
            RatFun::zero(),
            RatFun::one(),
        ])
    }

    /// Product of the distinct denominators, the poles of the family.
    pub fn pole_locus(&self) -> Poly<Rational> {
        let mut acc = Poly::one();
        for r in self.coefficients() {
            let g = acc.gcd_primitive(r.denom());
            acc = &acc * &r.denom().exact_div(&g).expect("gcd divides");
        }
        acc
    }
}

/// `x⁴ + r₂(a)/b² x² + r₁(a)/b³ x + r₀(a)/b⁴`.
pub fn family_quartic(fam: &ParamFamily, a: &Rational, b: &Rational) -> Result<Poly<Rational>, CurveError> {
    if b.is_zero() {
        return Err(CurveError::ZeroScale);
    }
    let mut c = [Rational::zero(), Rational::zero(), Rational::zero()];
    for (i, (r, w)) in fam.coefficients().into_iter().zip(ParamFamily::B_WEIGHTS).enumerate() {
        let v = r.eval(a).map_err(|_| CurveError::Degenerate {
            factor: r.denom().display_with("a").to_string(),
        })?;
        c[i] = v * b.powi(-w)?;
    }
    let [r2, r1, r0] = c;
    Ok(Poly::new(vec![r0, r1, r2, Rational::zero(), Rational::one()]))
}

/// `d(x - a₃/4)` for a monic quartic with cubic coefficient `a₃`, together
/// with the shift `-a₃/4`.
pub fn depress<F: Field>(d: &Poly<F>) -> (Poly<F>, F) {
    let s = -(d.coeff(3).div(&F::from_i64(4)).expect("4 is invertible"));
    (d.shift(&s), s)
}

/// The Jacobian of `y² = x⁴ + b₂x² + b₁x + b₀` as `y² = x³ + Ax + B` with
/// `α = -b₂/6`, `β = -b₁/8`, `A = -(b₀ + 3α²)/4`, `B = β² - α³ - Aα`; the
/// class `∞₊ - ∞₋` maps to `(α, β)`.
pub fn adams_razar_curve<F: Field>(q: &Poly<F>) -> Result<(ShortWeierstrass<F>, EcPoint<F>), CurveError> {
    if q.degree() != Some(4) || !q.is_monic() || !q.coeff(3).is_zero() {
        return Err(CurveError::NotDepressedQuartic(q.to_string()));
    }
    if !q.is_squarefree() {
        return Err(CurveError::NotSquarefree(q.to_string()));
    }
    let k = |n: i64| F::from_i64(n);
    let alpha = -q.coeff(2).div(&k(6))?;
    let beta = -q.coeff(1).div(&k(8))?;
    let c = q.coeff(0);
    let a = -(c + k(3) * alpha.pow(2)).div(&k(4))?;
    let b = beta.pow(2) - alpha.pow(3) - a.clone() * alpha.clone();
    let curve = ShortWeierstrass::new(a, b)?;
    let point = EcPoint::new(&curve, alpha, beta)?;
    Ok((curve, point))
}

/// Inverse of [`adams_razar_curve`] for the model scaled by `u`:
/// `r₂ = -6X/u²`, `r₁ = -8Y/u³`, `r₀ = (-4A - 3X²)/u⁴`.
pub fn quartic_from_curve<F: Field>(curve: &ShortWeierstrass<F>, point: &EcPoint<F>, u: &F) -> Result<Poly<F>, CurveError> {
    let (x, y) = point.coords().ok_or(CurveError::Degenerate {
        factor: "point at infinity".into(),
    })?;
    let k = |n: i64| F::from_i64(n);
    let r2 = (k(-6) * x.clone()).div(&u.pow(2))?;
    let r1 = (k(-8) * y.clone()).div(&u.pow(3))?;
    let r0 = (k(-4) * curve.a().clone() - k(3) * x.pow(2)).div(&u.pow(4))?;
    Ok(Poly::new(vec![r0, r1, r2, F::zero(), F::one()]))
}

/// Agreement of the hard-coded family with the Kubert pipeline at one
/// parameter point.
#[derive(Debug, Clone, Serialize)]
pub struct CrossCheck {
    pub m: u32,
    pub a: Rational,
    pub b: Rational,
    pub table: Poly<Rational>,
    pub derived: Option<Poly<Rational>>,
    pub u: Option<Rational>,
    pub agrees: bool,
}

/// Builds the Kubert curve at `t = a`, moves it to short form, reads a
/// quartic back through the inverse dictionary with the scale `u` that the
/// data determines, and compares it with the table at `(a, b)`.
pub fn cross_validate(m: u32, a: &Rational, b: &Rational) -> Result<CrossCheck, CurveError> {
    let fam = ParamFamily::get(m)?;
    let table = family_quartic(fam, a, b)?;
    let tc = kubert_params(m, a)?;
    let (curve, point) = tate_to_short(&tc)?;
    let (x, y) = point.coords().expect("affine").clone();
    let (r2, r1, r0) = (table.coeff(2), table.coeff(1), table.coeff(0));
    let k = |n: i64| Rational::from_int(n);
    // u² = -6X/r₂, u³ = -8Y/r₁, u⁴ = (-4A - 3X²)/r₀
    let u2 = (!r2.is_zero()).then(|| Field::div(&(k(-6) * x.clone()), &r2).unwrap());
    let u3 = (!r1.is_zero()).then(|| Field::div(&(k(-8) * y.clone()), &r1).unwrap());
    let u4 = (!r0.is_zero()).then(|| Field::div(&(k(-4) * curve.a().clone() - k(3) * x.pow(2)), &r0).unwrap());
    let u = match (u2, u3, u4) {
        (Some(u2), Some(u3), _) if !u2.is_zero() => Field::div(&u3, &u2).ok(),
        (_, Some(u3), Some(u4)) if !u3.is_zero() => Field::div(&u4, &u3).ok(),
        _ => None,
    };
    let derived = match &u {
        Some(u) if !u.is_zero() => Some(quartic_from_curve(&curve, &point, u)?),
        _ => None,
    };
    let agrees = derived.as_ref() == Some(&table);
    Ok(CrossCheck {
        m,
        a: a.clone(),
        b: b.clone(),
        table,
        derived,
        u,
        agrees,
    })
}

/// Period length `n` of √d and torsion order `m` of its Jacobian point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PeriodTorsion {
    pub period: usize,
    pub torsion: Option<u32>,
    /// `n = m - 1` or `n = 2(m - 1)`.
    pub consistent: bool,
}

pub fn check_period_torsion(d: &Poly<Rational>, max_steps: usize) -> Result<PeriodTorsion, CurveError> {
    let cf = cf_expand(d, max_steps).map_err(|_| CurveError::NotDepressedQuartic(d.to_string()))?;
    let period = cf.period.ok_or(CurveError::NoPeriod(max_steps))?.length;
    let (q, _) = depress(d);
    let (_, point) = adams_razar_curve(&q)?;
    let torsion = torsion_order(&point);
    let consistent = torsion.is_some_and(|m| {
        let m = m as usize;
        period == m - 1 || period == 2 * (m - 1)
    });
    Ok(PeriodTorsion {
        period,
        torsion,
        consistent,
    })
}
