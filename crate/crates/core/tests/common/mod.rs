//! Strategies and property checks shared by the property suites and the
//! acceptance runner.

#![allow(dead_code)]

pub mod criteria;

use num_bigint::BigInt;
use pellian::classify::canonicalize;
use pellian::contfrac::{cf_expand, convergents, Surd};
use pellian::curves::{
    adams_razar_curve, depress, ec_add, family_quartic, EcPoint, ParamFamily, ShortWeierstrass, TORSION_ORDERS,
};
use pellian::pell::{minimal_solution, power_solution};
use pellian::{Field, Poly, Rational};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use std::sync::Arc;

pub type P = Poly<Rational>;

pub const CASES: u32 = 100;

pub fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn p(s: &str) -> P {
    s.parse().unwrap()
}

pub fn int(n: i64) -> Rational {
    Rational::from_int(n)
}

pub fn rational(num: std::ops::Range<i64>, den: std::ops::Range<i64>) -> impl Strategy<Value = Rational> {
    (num, den).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

/// Monic integer quartics that are not squares.
pub fn quartic() -> impl Strategy<Value = P> {
    prop::collection::vec(-6i64..=6, 4)
        .prop_map(|mut c| {
            c.push(1);
            P::from_ints(&c)
        })
        .prop_filter("not a square", |d| d.sqrt_exact().is_none())
}

/// Monic non-square quadratics with rational coefficients.
pub fn quadratic() -> impl Strategy<Value = P> {
    (rational(-12..13, 1..5), rational(-12..13, 1..5))
        .prop_map(|(b, c)| P::new(vec![c, b, int(1)]))
        .prop_filter("not a square", |d| d.sqrt_exact().is_none())
}

/// Pellian radicands: quadratics, and a few quartics with known periods.
pub fn pellian() -> impl Strategy<Value = P> {
    prop_oneof![
        3 => quadratic(),
        1 => prop::sample::select(vec![
            p("x^4 + 2*x^3 - 7*x^2 - 4*x + 10"),
            p("x^4 + 2*x^2 + 3"),
            p("x^4 - 2*x^2 + 2"),
            p("x^4 + 1"),
        ]),
    ]
}

pub fn order() -> impl Strategy<Value = u32> {
    prop::sample::select(TORSION_ORDERS.to_vec())
}

/// `p_n q_(n-1) - p_(n-1) q_n = (-1)^(n+1)`.
pub fn determinant_identity(d: &P) -> Result<(), TestCaseError> {
    let cf = cf_expand(d, 6).unwrap();
    for n in 1..cf.quotient_count() {
        let (p1, q1) = convergents(&cf, n).unwrap();
        let (p0, q0) = convergents(&cf, n - 1).unwrap();
        let det = &(&p1 * &q0) - &(&p0 * &q1);
        let sign = if n % 2 == 1 { 1 } else { -1 };
        prop_assert_eq!(det, P::constant(int(sign)), "n = {}", n);
    }
    Ok(())
}

/// Every complete quotient `(P_n + √d)/Q_n` has `Q_n | d - P_n²`, and
/// `p_n² - d q_n² = (-1)^(n+1) Q_(n+1)`.
pub fn surd_invariant(d: &P) -> Result<(), TestCaseError> {
    let cf = cf_expand(d, 6).unwrap();
    let shared = Arc::new(d.clone());
    let mut pn = P::zero();
    for n in 0..cf.denominators.len() {
        let qn = &cf.denominators[n];
        prop_assert!(Surd::new(pn.clone(), qn.clone(), Arc::clone(&shared)).is_some(), "n = {}", n);
        if n + 1 < cf.denominators.len() {
            let (pc, qc) = convergents(&cf, n).unwrap();
            let norm = &(&pc * &pc) - &(&(d * &qc) * &qc);
            let next = &cf.denominators[n + 1];
            let expect = if n % 2 == 0 { -next.clone() } else { next.clone() };
            prop_assert_eq!(norm, expect, "n = {}", n);
        }
        let Some(a) = cf.quotient(n) else { break };
        pn = &(a * qn) - &pn;
    }
    Ok(())
}

/// `lead(f_n) = 2^(n-1) lead(f_1)^n`.
pub fn lead_law(d: &P) -> Result<(), TestCaseError> {
    let s = minimal_solution(d, 64).unwrap().expect("pellian");
    let a1 = s.f.lead().unwrap().clone();
    for n in 1..=6u32 {
        let sn = power_solution(&s, n).unwrap();
        let expect = int(2).pow(n - 1) * a1.pow(n);
        prop_assert_eq!(sn.f.lead().unwrap(), &expect, "n = {}", n);
    }
    Ok(())
}

/// `g_(n+2) = 2 f_1 g_(n+1) - g_n` with `g_0 = 0`, and likewise for `f`
/// with `f_0 = 1`.
pub fn pell_recurrence(d: &P) -> Result<(), TestCaseError> {
    let s = minimal_solution(d, 64).unwrap().expect("pellian");
    prop_assert!(s.verify() && s.is_unit());
    let two_f1 = s.f.scale(&int(2));
    let mut fs = vec![P::one()];
    let mut gs = vec![P::zero()];
    for n in 1..=6u32 {
        let sn = power_solution(&s, n).unwrap();
        prop_assert!(sn.verify() && sn.is_unit());
        fs.push(sn.f);
        gs.push(sn.g);
    }
    for n in 0..fs.len() - 2 {
        prop_assert_eq!(&gs[n + 2], &(&(&two_f1 * &gs[n + 1]) - &gs[n]), "g, n = {}", n);
        prop_assert_eq!(&fs[n + 2], &(&(&two_f1 * &fs[n + 1]) - &fs[n]), "f, n = {}", n);
    }
    Ok(())
}

/// A curve through two given affine points, if it is nonsingular.
pub fn curve_through(x1: &Rational, y1: &Rational, x2: &Rational, y2: &Rational) -> Option<ShortWeierstrass<Rational>> {
    if x1 == x2 {
        return None;
    }
    let lhs = |x: &Rational, y: &Rational| y.pow(2) - x.pow(3);
    let a = Field::div(&(lhs(x1, y1) - lhs(x2, y2)), &(x1.clone() - x2.clone())).ok()?;
    let b = lhs(x1, y1) - a.clone() * x1.clone();
    ShortWeierstrass::new(a, b).ok()
}

pub fn two_points() -> impl Strategy<Value = (Rational, Rational, Rational, Rational)> {
    (
        rational(-9..10, 1..4),
        rational(-9..10, 1..4),
        rational(-9..10, 1..4),
        rational(-9..10, 1..4),
    )
}

/// `(P + Q) + R = P + (Q + R)` for `R = P + 2Q` and for `R = -P`.
pub fn associativity(pts: &(Rational, Rational, Rational, Rational)) -> Result<(), TestCaseError> {
    let (x1, y1, x2, y2) = pts;
    let Some(curve) = curve_through(x1, y1, x2, y2) else {
        return Err(TestCaseError::reject("singular or degenerate"));
    };
    let pp = EcPoint::new(&curve, x1.clone(), y1.clone()).unwrap();
    let qq = EcPoint::new(&curve, x2.clone(), y2.clone()).unwrap();
    let q2 = ec_add(&qq, &qq).unwrap();
    for r in [ec_add(&pp, &q2).unwrap(), pp.neg(), q2.clone()] {
        let left = ec_add(&ec_add(&pp, &qq).unwrap(), &r).unwrap();
        let right = ec_add(&pp, &ec_add(&qq, &r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
    Ok(())
}

/// The Jacobian point of a square-free quartic lies on its curve.
pub fn point_on_curve(d: &P) -> Result<(), TestCaseError> {
    if !d.is_squarefree() {
        return Err(TestCaseError::reject("repeated factor"));
    }
    let (dep, _) = depress(d);
    let (curve, point) = adams_razar_curve(&dep).unwrap();
    let (x, y) = point.coords().expect("affine");
    prop_assert!(curve.contains(x, y));
    Ok(())
}

/// `d_{a,b}(x) = b⁻⁴ d_{a,1}(bx)`.
pub fn scaling_covariance(m: u32, a: &Rational, b: &Rational) -> Result<(), TestCaseError> {
    let fam = ParamFamily::get(m).unwrap();
    let Ok(unit) = family_quartic(fam, a, &int(1)) else {
        return Err(TestCaseError::reject("pole"));
    };
    let scaled = family_quartic(fam, a, b).unwrap();
    let b4 = Field::div(&int(1), &b.pow(4)).unwrap();
    prop_assert_eq!(scaled, unit.scale_var(b).scale(&b4));
    Ok(())
}

/// Canonical forms are constant on `x ↦ ±x + c` orbits and fixed by a
/// second application.
pub fn canonical_orbit(d: &P, neg: bool, c: i64) -> Result<(), TestCaseError> {
    let s = if neg { -1 } else { 1 };
    let e = d.scale_var(&int(s)).shift(&int(c * s));
    let cd = canonicalize(d).unwrap();
    prop_assert_eq!(&cd.poly, &canonicalize(&e).unwrap().poly);
    prop_assert_eq!(&canonicalize(&cd.poly).unwrap().poly, &cd.poly);
    let top = cd.poly.coeff(3).to_integer().unwrap();
    prop_assert!(top >= BigInt::from(0) && top < BigInt::from(4));
    Ok(())
}

pub fn config() -> Config {
    Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn runner() -> TestRunner {
    TestRunner::new(config())
}

fn run<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Option<(String, String)> {
    runner().run(&strategy, test).err().map(|e| (name.to_string(), e.to_string()))
}

/// Runs every property suite with [`CASES`] cases each; returns the failed
/// suites with their minimal counterexamples.
pub fn run_all_properties() -> Vec<(String, String)> {
    [
        run("convergent determinant", quartic(), |d| determinant_identity(&d)),
        run("surd divisibility", quartic(), |d| surd_invariant(&d)),
        run("lead law", pellian(), |d| lead_law(&d)),
        run("pell recurrence", pellian(), |d| pell_recurrence(&d)),
        run("group law associativity", two_points(), |t| associativity(&t)),
        run("point on curve", quartic(), |d| point_on_curve(&d)),
        run(
            "scaling covariance",
            (order(), rational(-9..10, 1..6), rational(1..7, 1..4)),
            |(m, a, b)| scaling_covariance(m, &a, &b),
        ),
        run("canonical orbits", (quartic(), any::<bool>(), -5i64..=5), |(d, neg, c)| {
            canonical_orbit(&d, neg, c)
        }),
    ]
    .into_iter()
    .flatten()
    .collect()
}
