//! Integrality constraints on the family parameters and their reduction to
//! finite sets of `(a, b)`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::ClassifyError;
use crate::arith::integer::{divisors, factorize};
use crate::arith::{valuation_unchecked, Field, RatFun, Rational};
use crate::contfrac::{cf_expand, SideCondition, SideConditionKind};
use crate::curves::ParamFamily;
use crate::pell::minimal_lead;
use crate::poly::Poly;

/// `expr(a) / b^weight ∈ ℤ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstraintItem {
    pub label: String,
    #[serde(serialize_with = "crate::report::display_str")]
    pub expr: RatFun,
    pub weight: i32,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstraintSet {
    pub m: u32,
    /// `8r₂`, `8r₁`, `256r₀` and the leading coefficient of `f₁`.
    pub items: Vec<ConstraintItem>,
    /// Degree of the minimal solution's `f`.
    pub lead_degree: usize,
    /// True when the quasi-period constant is not a square in ℚ(a).
    pub doubled: bool,
    /// Index `n` of the first constant `Q_n`.
    pub quasi_period: usize,
    #[serde(serialize_with = "crate::report::display_str")]
    pub quasi_constant: RatFun,
    pub side_conditions: Vec<SideCondition>,
    /// Rational values of `a` where the generic expansion is not valid and
    /// a separate search is needed.
    pub degeneration_points: Vec<Rational>,
}

impl ConstraintSet {
    /// The items evaluated at `a`, with their weights.
    pub fn values_at(&self, a: &Rational) -> Result<Vec<(Rational, i32)>, ClassifyError> {
        self.items
            .iter()
            .map(|it| {
                it.expr
                    .eval(a)
                    .map(|v| (v, it.weight))
                    .map_err(|_| ClassifyError::Degenerate {
                        a: a.clone(),
                        factor: it.expr.denom().display_with("a").to_string(),
                    })
            })
            .collect()
    }
}

fn positive(r: RatFun) -> RatFun {
    if r.is_negative() {
        -r
    } else {
        r
    }
}

/// Expands the family quartic over ℚ(a) at `b = 1` and assembles the four
/// constraints. Since `d_(a,b)(x) = b⁻⁴ d_(a,1)(bx)`, the solution scales
/// as `f(bx)` and its leading coefficient carries `b^deg f`.
pub fn build_constraints(m: u32, cf_cutoff: usize) -> Result<ConstraintSet, ClassifyError> {
    let fam = ParamFamily::get(m)?;
    let d = fam.symbolic_quartic();
    let cf = cf_expand(&d, cf_cutoff)?;
    let ld = minimal_lead(&cf).ok_or(ClassifyError::SymbolicNoPeriod { m, steps: cf_cutoff })?;
    let [r2, r1, r0] = fam.coefficients();
    let k = |n: i64| RatFun::from_i64(n);
    let items = vec![
        ConstraintItem {
            label: "8*r2".into(),
            expr: positive(k(8) * r2.clone()),
            weight: 2,
        },
        ConstraintItem {
            label: "8*r1".into(),
            expr: positive(k(8) * r1.clone()),
            weight: 3,
        },
        ConstraintItem {
            label: "256*r0".into(),
            expr: positive(k(256) * r0.clone()),
            weight: 4,
        },
        ConstraintItem {
            label: "lead(f1)".into(),
            expr: ld.lead.clone(),
            weight: -(ld.degree as i32),
        },
    ];

    let poles = fam.pole_locus();
    let mut points = BTreeSet::new();
    for sc in &cf.side_conditions {
        if sc.kind != SideConditionKind::PeriodCollapse {
            points.extend(sc.rational_roots.iter().cloned());
        }
    }
    for p in [ld.lead.numer(), ld.lead.denom()] {
        points.extend(p.rational_roots());
    }
    let degeneration_points = points.into_iter().filter(|a| !poles.eval(a).is_zero()).collect();

    Ok(ConstraintSet {
        m,
        items,
        lead_degree: ld.degree,
        doubled: ld.doubled,
        quasi_period: ld.quasi.k + 1,
        quasi_constant: ld.quasi.constant,
        side_conditions: cf.side_conditions,
        degeneration_points,
    })
}

/// A product `Π itemᵢ^eᵢ` free of `b`, written `p(a)/q(a)` with coprime
/// integer polynomials.
#[derive(Debug, Clone, Serialize)]
pub struct BFreeCombination {
    pub exponents: Vec<u32>,
    #[serde(serialize_with = "crate::report::display_str")]
    pub expr: RatFun,
    #[serde(serialize_with = "crate::report::display_in_a")]
    pub numer: Poly<Rational>,
    #[serde(serialize_with = "crate::report::display_in_a")]
    pub denom: Poly<Rational>,
}

/// Writes `r = p/q` with `p, q ∈ ℤ[a]` sharing no integer content and
/// `lead(q) > 0`.
fn integer_fraction(r: &RatFun) -> (Poly<Rational>, Poly<Rational>) {
    let (n, d) = r.integer_parts();
    let g = n
        .coeffs()
        .iter()
        .chain(d.coeffs())
        .fold(BigInt::zero(), |g, c| g.gcd(c.numer()));
    let gi = Rational::new(BigInt::one(), g).expect("nonzero content");
    (n.scale(&gi), d.scale(&gi))
}

/// True when `p/q` satisfies `deg p > deg q` and `q(0) = 0`, the shape in
/// which `a = r/s` forces `s | lead(p)` and `r | p(0)`.
fn divisor_shape(p: &Poly<Rational>, q: &Poly<Rational>) -> bool {
    p.degree() > q.degree() && q.coeff(0).is_zero() && !p.coeff(0).is_zero()
}

/// Searches `eᵢ ∈ {0..3}` with `Σ eᵢ·weightᵢ = 0` for a product of the
/// required shape, preferring the smallest numerator degree, then the
/// lexicographically smallest exponent vector.
pub fn b_free_combination(cs: &ConstraintSet) -> Result<BFreeCombination, ClassifyError> {
    let n = cs.items.len();
    let mut best: Option<(usize, Vec<u32>, BFreeCombination)> = None;
    let total = 4usize.pow(n as u32);
    for code in 1..total {
        let e: Vec<u32> = (0..n).map(|i| ((code >> (2 * (n - 1 - i))) & 3) as u32).collect();
        let w: i32 = e.iter().zip(&cs.items).map(|(&ei, it)| ei as i32 * it.weight).sum();
        if w != 0 {
            continue;
        }
        let expr = e
            .iter()
            .zip(&cs.items)
            .fold(RatFun::one(), |acc, (&ei, it)| acc * it.expr.pow(ei));
        let (p, q) = integer_fraction(&expr);
        if !divisor_shape(&p, &q) {
            continue;
        }
        let deg = p.degree().expect("nonzero");
        let better = match &best {
            None => true,
            Some((bd, be, _)) => (deg, &e) < (*bd, be),
        };
        if better {
            let comb = BFreeCombination {
                exponents: e.clone(),
                expr,
                numer: p,
                denom: q,
            };
            best = Some((deg, e, comb));
        }
    }
    best.map(|(_, _, c)| c).ok_or(ClassifyError::NoCombination(cs.m))
}

/// The divisor set `{±r/s : s | lead(p), r | p(0), gcd(r, s) = 1}` and the
/// members at which `p/q` is an integer.
#[derive(Debug, Clone, Serialize)]
pub struct ABound {
    pub divisor_candidates: usize,
    #[serde(serialize_with = "crate::report::display_vec")]
    pub values: Vec<Rational>,
}

pub fn bound_a(expr: &RatFun) -> Result<ABound, ClassifyError> {
    let (p, q) = integer_fraction(expr);
    if !divisor_shape(&p, &q) {
        return Err(ClassifyError::NotDivisorShape(expr.to_string()));
    }
    let pn = p.lead().expect("nonzero").to_integer().expect("integral");
    let p0 = p.coeff(0).to_integer().expect("integral");
    let mut set = BTreeSet::new();
    for s in divisors(&pn) {
        for r in divisors(&p0) {
            if !r.gcd(&s).is_one() {
                continue;
            }
            for r in [r.clone(), -r] {
                set.insert(Rational::new(r, s.clone()).expect("s > 0"));
            }
        }
    }
    let divisor_candidates = set.len();
    let pz = integer_coeffs(&p);
    let qz = integer_coeffs(&q);
    let gap = (pz.len() - qz.len()) as u32;
    // p(r/s)/q(r/s) = P(r, s) / (Q(r, s)·s^(deg p - deg q)) with P, Q the
    // homogenizations, which keeps the test in integer arithmetic.
    let values = set
        .into_iter()
        .filter(|a| {
            let (r, s) = (a.numer(), a.denom());
            let den = homogeneous_eval(&qz, r, s) * num_traits::pow(s.clone(), gap as usize);
            !den.is_zero() && homogeneous_eval(&pz, r, s).is_multiple_of(&den)
        })
        .collect();
    Ok(ABound {
        divisor_candidates,
        values,
    })
}

fn integer_coeffs(p: &Poly<Rational>) -> Vec<BigInt> {
    p.coeffs().iter().map(|c| c.to_integer().expect("integral")).collect()
}

/// `Σ cᵢ rⁱ s^(n-i)` with `n = len - 1`, by Horner's scheme in `r` from
/// the top coefficient.
fn homogeneous_eval(c: &[BigInt], r: &BigInt, s: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut sp = BigInt::one();
    for ci in c.iter().rev() {
        acc = acc * r + ci * &sp;
        sp *= s;
    }
    acc
}

/// Admissible `v_p(b)` for one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuationBox {
    #[serde(serialize_with = "crate::report::display_str")]
    pub prime: BigUint,
    pub lo: i64,
    pub hi: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BBound {
    pub boxes: Vec<ValuationBox>,
    #[serde(serialize_with = "crate::report::display_vec")]
    pub values: Vec<Rational>,
}

fn primes_of(x: &Rational, out: &mut BTreeSet<BigUint>) {
    for n in [x.numer(), x.denom()] {
        out.extend(factorize(n).into_iter().map(|(p, _)| p));
    }
}

/// Intersects the per-prime conditions `v_p(value) - weight·v_p(b) ≥ 0`
/// and enumerates the `b` they allow. Primes dividing no value are forced
/// to valuation 0 as long as both signs of weight occur.
pub fn bound_b_values(values: &[(Rational, i32)]) -> Result<BBound, ClassifyError> {
    let nonzero: Vec<&(Rational, i32)> = values.iter().filter(|(v, _)| !v.is_zero()).collect();
    if !nonzero.iter().any(|(_, w)| *w > 0) || !nonzero.iter().any(|(_, w)| *w < 0) {
        return Err(ClassifyError::Unbounded);
    }
    let mut primes = BTreeSet::new();
    for (v, _) in &nonzero {
        primes_of(v, &mut primes);
    }
    let mut boxes = Vec::new();
    for p in primes {
        let (mut lo, mut hi) = (i64::MIN, i64::MAX);
        for (v, w) in &nonzero {
            let val = valuation_unchecked(v, &p).expect("nonzero");
            let w = *w as i64;
            if w > 0 {
                hi = hi.min(Integer::div_floor(&val, &w));
            } else {
                lo = lo.max(Integer::div_ceil(&(-val), &(-w)));
            }
        }
        if lo > hi {
            return Ok(BBound {
                boxes: vec![ValuationBox { prime: p, lo, hi }],
                values: Vec::new(),
            });
        }
        boxes.push(ValuationBox { prime: p, lo, hi });
    }
    let mut mags = vec![Rational::one()];
    for bx in &boxes {
        let base = Rational::from_int(BigInt::from(bx.prime.clone()));
        let mut next = Vec::with_capacity(mags.len() * (bx.hi - bx.lo + 1) as usize);
        for m in &mags {
            for e in bx.lo..=bx.hi {
                next.push(m.clone() * base.powi(e as i32).expect("nonzero"));
            }
        }
        mags = next;
    }
    let mut out = Vec::with_capacity(2 * mags.len());
    for m in mags {
        for b in [m.clone(), -m] {
            if satisfies(values, &b) {
                out.push(b);
            }
        }
    }
    out.sort();
    Ok(BBound { boxes, values: out })
}

/// True when every `value / b^weight` is an integer.
pub fn satisfies(values: &[(Rational, i32)], b: &Rational) -> bool {
    values
        .iter()
        .all(|(v, w)| b.powi(-*w).is_ok_and(|s| (v.clone() * s).is_integer()))
}

/// The first constraint failing at `b`, as `(index, value / b^weight)`.
pub fn first_failure(values: &[(Rational, i32)], b: &Rational) -> Option<(usize, Rational)> {
    values.iter().enumerate().find_map(|(i, (v, w))| {
        let x = v.clone() * b.powi(-*w).ok()?;
        (!x.is_integer()).then_some((i, x))
    })
}

pub fn bound_b(cs: &ConstraintSet, a: &Rational) -> Result<BBound, ClassifyError> {
    bound_b_values(&cs.values_at(a)?)
}

/// Union of the boxes of several `bound_b` results, per prime, keeping
/// the primes that `b` may actually contain.
pub fn merge_boxes<'a>(bounds: impl IntoIterator<Item = &'a BBound>) -> Vec<ValuationBox> {
    let mut acc: BTreeMap<BigUint, (i64, i64)> = BTreeMap::new();
    for b in bounds {
        if b.values.is_empty() {
            continue;
        }
        for bx in &b.boxes {
            let e = acc.entry(bx.prime.clone()).or_insert((bx.lo, bx.hi));
            e.0 = e.0.min(bx.lo);
            e.1 = e.1.max(bx.hi);
        }
    }
    acc.into_iter()
        .filter(|(_, (lo, hi))| (*lo, *hi) != (0, 0))
        .map(|(prime, (lo, hi))| ValuationBox { prime, lo, hi })
        .collect()
}

/// Sign-insensitive check used by tests: `x` is `±2^k` for some `k`.
#[cfg(test)]
fn is_signed_power_of_two(x: &Rational) -> Option<i64> {
    let two = BigUint::from(2u8);
    let v = valuation_unchecked(x, &two)?;
    let unit = x.clone() * Rational::from_int(2).powi(-(v as i32)).ok()?;
    (unit.abs().is_one()).then_some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contfrac::DEFAULT_MAX_STEPS_SYMBOLIC;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn cs4() -> ConstraintSet {
        build_constraints(4, DEFAULT_MAX_STEPS_SYMBOLIC).unwrap()
    }

    #[test]
    fn m4_constraints() {
        let cs = cs4();
        assert_eq!(cs.items.len(), 4);
        assert_eq!(cs.items[1].expr.to_string(), "256*a");
        assert_eq!(cs.items[3].expr.to_string(), "1/(512*a^3)");
        assert_eq!(cs.items[3].weight, -8);
        assert_eq!(cs.lead_degree, 8);
    }

    #[test]
    fn m4_combination() {
        let c = b_free_combination(&cs4()).unwrap();
        assert_eq!(c.exponents, vec![0, 0, 2, 1]);
        assert_eq!(
            c.expr.to_string(),
            "(32768*a^4 + 98304*a^3 + 77824*a^2 + 6144*a + 128)/a^3"
        );
    }

    #[test]
    fn m4_a_bound_is_two_adic() {
        let c = b_free_combination(&cs4()).unwrap();
        let ab = bound_a(&c.expr).unwrap();
        assert_eq!(ab.divisor_candidates, 46);
        for a in &ab.values {
            let v = is_signed_power_of_two(a).expect("power of two");
            assert!((-15..=7).contains(&v), "{a}");
        }
        for a in ["-1/16", "-1/64", "2"] {
            assert!(ab.values.contains(&q(a)), "{a}");
        }
    }

    #[test]
    fn m4_b_bound() {
        let cs = cs4();
        let c = b_free_combination(&cs).unwrap();
        let ab = bound_a(&c.expr).unwrap();
        let bounds: Vec<BBound> = ab
            .values
            .iter()
            .filter(|a| !cs.degeneration_points.contains(a))
            .map(|a| bound_b(&cs, a).unwrap())
            .collect();
        let pairs: usize = bounds.iter().map(|b| b.values.len()).sum();
        assert!(pairs <= 84, "{pairs}");
        let merged = merge_boxes(&bounds);
        assert_eq!(merged.len(), 1);
        assert!(merged[0].lo >= -4 && merged[0].hi <= 5);
        let at = |a: &str| bound_b(&cs, &q(a)).unwrap().values;
        assert!(at("-1/16").contains(&q("1")) && at("-1/16").contains(&q("-2")));
        assert!(at("-1/64").contains(&q("1/2")) && at("-1/64").contains(&q("-1/2")));
        assert!(at("2").contains(&q("4")));
    }

    #[test]
    fn lemma_shape() {
        let p: Poly<Rational> = Poly::parse_in("a^2 - 4", "a").unwrap();
        let r = RatFun::new(p, Poly::x()).unwrap();
        let ab = bound_a(&r).unwrap();
        assert_eq!(ab.divisor_candidates, 6);
        assert_eq!(ab.values, vec![q("-4"), q("-2"), q("-1"), q("1"), q("2"), q("4")]);
        let bad = RatFun::new(Poly::x(), Poly::one()).unwrap();
        assert!(bound_a(&bad).is_err());
    }

    #[test]
    fn odd_primes_forced_to_zero() {
        let vals = vec![(q("3"), 2), (q("5"), 3), (q("1"), 4), (q("1"), -8)];
        let bb = bound_b_values(&vals).unwrap();
        assert_eq!(bb.values, vec![q("-1"), q("1")]);
        let contradictory = vec![(q("1/2"), 2), (q("1"), -8)];
        assert!(bound_b_values(&contradictory).unwrap().values.is_empty());
    }
}
