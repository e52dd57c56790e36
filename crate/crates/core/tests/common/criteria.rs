//! One check per acceptance criterion. Each returns a short summary on
//! success and a description of the first discrepancy on failure.

use std::collections::BTreeSet;

use num_traits::Signed;
use pellian::classify::{classify_nonsquarefree, search_torsion, CandidateStatus};
use pellian::contfrac::{abel_check, cf_expand};
use pellian::curves::{check_period_torsion, cross_validate, family_quartic, ParamFamily, TORSION_ORDERS};
use pellian::pell::minimal_solution;
use pellian::poly::sqrt_series;
use pellian::verify::{self, NONSQUAREFREE_FORMS, SQUAREFREE_SURVIVOR, SURVIVOR_F, SURVIVOR_G};
use pellian::{Field, Poly, RatFun, Rational, RunConfig};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

use super::{int, p, q, P};

pub type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rf(num: &str, den: &str) -> RatFun {
    RatFun::new(Poly::parse_in(num, "a").unwrap(), Poly::parse_in(den, "a").unwrap()).unwrap()
}

/// `c0 + c1 x + c2 x²` over ℚ(a), from `(numerator, denominator)` pairs.
fn quotient_in_a(cs: &[(&str, &str)]) -> Poly<RatFun> {
    Poly::new(cs.iter().map(|(n, d)| rf(n, d)).collect())
}

pub fn cf_goldens() -> Outcome {
    let e = cf_expand(&p("x^2 + 1"), 64).map_err(|e| e.to_string())?;
    ensure(e.a0 == p("x") && e.period_quotients() == Some(&[p("2*x")][..]), || {
        format!("sqrt(x^2 + 1): a0 = {}, quotients {:?}", e.a0, e.partial_quotients)
    })?;
    for s in [1i64, -1, 2, -2, 3, 5] {
        let d = P::new(vec![int(s), int(0), int(1)]);
        let e = cf_expand(&d, 64).map_err(|e| e.to_string())?;
        let len = e.period.map(|p| p.length);
        let want = if s == 1 { 1 } else { 2 };
        ensure(len == Some(want) && abel_check(&e), || format!("{d}: period {len:?}, want {want}"))?;
        let two_x_over_s = p("2*x").scale(&Field::div(&int(1), &int(s)).unwrap());
        let golden: Vec<P> = if s == 1 { vec![p("2*x")] } else { vec![two_x_over_s, p("2*x")] };
        ensure(e.period_quotients() == Some(&golden[..]), || format!("{d}: quotients differ"))?;
    }
    for s in [-2i64, -1, 1, 2, 3] {
        let d = P::new(vec![int(s), int(1), int(1)]);
        let e = cf_expand(&d, 64).map_err(|e| e.to_string())?;
        let k = Field::div(&int(1), &(int(s) - q("1/4"))).unwrap();
        let golden = [p("2*x + 1").scale(&k), p("2*x + 1")];
        ensure(e.a0 == p("x + 1/2") && e.period_quotients() == Some(&golden[..]), || {
            format!("{d}: quotients differ")
        })?;
    }
    // The order-4 family at b = 1, symbolically in a.
    let fam = ParamFamily::get(4).map_err(|e| e.to_string())?;
    let e = cf_expand(&fam.symbolic_quartic(), 16).map_err(|e| e.to_string())?;
    let a0 = quotient_in_a(&[("4*a - 1", "1"), ("0", "1"), ("1", "1")]);
    let golden = [
        quotient_in_a(&[("-1", "16*a"), ("1", "16*a")]),
        quotient_in_a(&[("-4", "1"), ("4", "1")]),
        quotient_in_a(&[("4*a - 1", "32*a"), ("0", "1"), ("1", "32*a")]),
        quotient_in_a(&[("-4", "1"), ("4", "1")]),
        quotient_in_a(&[("-1", "16*a"), ("1", "16*a")]),
        quotient_in_a(&[("8*a - 2", "1"), ("0", "1"), ("2", "1")]),
    ];
    ensure(e.a0 == a0 && e.period_quotients() == Some(&golden[..]), || {
        let qs: Vec<String> = e.partial_quotients.iter().map(|q| q.to_string()).collect();
        format!("order-4 family: a0 = {}, quotients [{}]", e.a0, qs.join(", "))
    })?;
    // Period 3 exactly when b^4/(32a) = 2.
    let short = cf_expand(&family_quartic(fam, &q("1/4"), &int(2)).unwrap(), 64).unwrap();
    let long = cf_expand(&family_quartic(fam, &q("1/4"), &int(3)).unwrap(), 64).unwrap();
    ensure(
        short.period.map(|p| p.length) == Some(3) && long.period.map(|p| p.length) == Some(6),
        || "order-4 family: period 3 at b^4 = 64a not reproduced".into(),
    )?;
    Ok("x^2 + s, x^2 + x + s and the order-4 family match".into())
}

fn check_solution(d: &str, f: &str, g: &str) -> Result<(), String> {
    let dd = p(d);
    let s = minimal_solution(&dd, 64)
        .map_err(|e| e.to_string())?
        .ok_or_else(|| format!("{d}: no solution"))?;
    ensure(s.f == p(f) && s.g == p(g), || format!("{d}: got ({}, {})", s.f, s.g))?;
    let residual = &(&(&s.f * &s.f) - &(&(&dd * &s.g) * &s.g)) - &P::one();
    ensure(residual.is_zero(), || format!("{d}: f^2 - d g^2 - 1 = {residual}"))
}

pub fn pell_goldens() -> Outcome {
    check_solution("x^2 + 1", "2*x^2 + 1", "2*x")?;
    check_solution("x^2 - 1", "x", "1")?;
    check_solution("x^2 + x", "2*x + 1", "2")?;
    check_solution("x^4 + 2*x^3 - 7*x^2 - 4*x + 10", "x^4 + 6*x^3 + 7*x^2 - 12*x - 19", "x^2 + 5*x + 6")?;
    Ok("x^2 + 1, x^2 - 1, x^2 + x".into())
}

pub fn squarefree_search() -> Outcome {
    let cfg = RunConfig::default();
    let mut counts = Vec::new();
    for m in TORSION_ORDERS {
        let r = search_torsion(m, &cfg).map_err(|e| e.to_string())?;
        let failed: Vec<String> = verify::search_checks(&r)
            .into_iter()
            .filter(|c| !c.ok)
            .map(|c| format!("{}: expected {}, got {}", c.name, c.expected, c.actual))
            .collect();
        ensure(failed.is_empty(), || failed.join("; "))?;
        let undecided = r.candidates.iter().any(|c| {
            c.status == CandidateStatus::NotPellianOverZ
                && !matches!(
                    c.certificate,
                    Some(pellian::classify::Certificate::NoIntegralSolution {
                        verdict: pellian::pell::PellVerdict::ProvenAbsent { .. }
                    })
                )
        });
        ensure(!undecided, || format!("m = {m}: a candidate hit the power bound"))?;
        if m == 4 {
            let s = &r.survivors[0];
            ensure(s.canonical.to_string() == SQUAREFREE_SURVIVOR, || "survivor form".into())?;
            let w = s.period_solution.as_ref().ok_or("no period solution")?;
            ensure(w.f.to_string() == SURVIVOR_F && w.g.to_string() == SURVIVOR_G, || {
                format!("witness ({}, {})", w.f, w.g)
            })?;
        }
        counts.push(format!("{m}:{}", r.survivors.len()));
    }
    Ok(format!("survivors per order [{}]", counts.join(" ")))
}

pub fn nonsquarefree() -> Outcome {
    let r = classify_nonsquarefree(&RunConfig::default()).map_err(|e| e.to_string())?;
    let got: BTreeSet<String> = r.canonical.iter().map(|p| p.to_string()).collect();
    let want: BTreeSet<String> = NONSQUAREFREE_FORMS.iter().map(|s| s.to_string()).collect();
    ensure(got == want && r.canonical.len() == want.len(), || format!("got {got:?}"))?;
    for (x, y) in [
        ("x^2*(x^2 + 1)", "x^4 + x^2"),
        ("x^2*(x^2 - 1)", "x^4 - x^2"),
        ("x^2*(x^2 + 2)", "x^4 + 2*x^2"),
        ("x^2*(x^2 - 2)", "x^4 - 2*x^2"),
        ("x^2*(x^2 - 2*x - 1)", "x^4 + 2*x^3 - x^2"),
    ] {
        let c = pellian::classify::canonicalize(&p(x)).map_err(|e| e.to_string())?;
        ensure(c.poly == p(y) && got.contains(y), || format!("{x} is missing"))?;
    }
    Ok(format!("{} forms", got.len()))
}

/// Draws `count` parameter pairs per order for which the quartic is
/// defined and square-free.
pub fn random_instances(m: u32, count: usize, runner: &mut TestRunner) -> Vec<(Rational, Rational)> {
    let fam = ParamFamily::get(m).unwrap();
    let a_s = super::rational(-40..41, 1..9);
    let b_s = super::rational(-8..9, 1..5).prop_filter("nonzero", |b| !b.is_zero());
    let mut out = Vec::new();
    while out.len() < count {
        let a = a_s.new_tree(runner).unwrap().current();
        let b = b_s.new_tree(runner).unwrap().current();
        if let Ok(d) = family_quartic(fam, &a, &b) {
            if d.is_squarefree() {
                out.push((a, b));
            }
        }
    }
    out
}

pub fn period_torsion() -> Outcome {
    let mut runner = TestRunner::deterministic();
    let mut seen = BTreeSet::new();
    for m in TORSION_ORDERS {
        let fam = ParamFamily::get(m).unwrap();
        for (a, b) in random_instances(m, 10, &mut runner) {
            let d = family_quartic(fam, &a, &b).unwrap();
            let pt = check_period_torsion(&d, 64).map_err(|e| format!("m = {m}, ({a}, {b}): {e}"))?;
            ensure(pt.torsion == Some(m) && pt.consistent, || {
                format!("m = {m}, ({a}, {b}): torsion {:?}, period {}", pt.torsion, pt.period)
            })?;
            seen.insert((pt.period, m));
        }
    }
    ensure(seen.contains(&(6, 4)) && seen.contains(&(4, 5)), || format!("observed {seen:?}"))?;
    let pairs: Vec<String> = seen.iter().map(|(n, m)| format!("({n},{m})")).collect();
    Ok(format!("(n, m) observed: {}", pairs.join(" ")))
}

/// Parameter values tried in order until five lie off the bad loci.
const CROSS_POINTS: [&str; 12] = ["2", "3", "-2", "1/2", "-1/3", "5/2", "3/4", "-5", "7", "2/5", "-3/2", "9/7"];

pub fn cross_validation() -> Outcome {
    let mut total = 0;
    for m in TORSION_ORDERS {
        let mut done = 0;
        for a in CROSS_POINTS {
            if done == 5 {
                break;
            }
            let b = int(2 + (done as i64 % 3));
            let Ok(c) = cross_validate(m, &q(a), &b) else {
                continue;
            };
            ensure(c.agrees, || {
                format!(
                    "m = {m}, a = {a}: table {} vs derived {}",
                    c.table,
                    c.derived.map_or("none".into(), |d| d.to_string())
                )
            })?;
            done += 1;
        }
        ensure(done == 5, || format!("m = {m}: only {done} usable points"))?;
        total += done;
    }
    Ok(format!("{total} points agree"))
}

/// Squares the series of `√d` and compares with `d` on the known window.
pub fn sqrt_by_squaring(d: &P, precision: usize) -> Result<(), String> {
    let s = sqrt_series(d, precision).map_err(|e| e.to_string())?;
    let sq = s.mul(&s);
    for n in sq.lowest_known()..=sq.top_degree() {
        let want = if n >= 0 { d.coeff(n as usize) } else { int(0) };
        ensure(sq.coeff(n) == Some(want.clone()), || format!("{d}: coefficient of x^{n}"))?;
    }
    Ok(())
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.numer().is_negative() {
        return None;
    }
    let n = pellian::arith::integer::exact_sqrt(r.numer())?;
    let d = pellian::arith::integer::exact_sqrt(r.denom())?;
    Some(Rational::new(n, d).unwrap())
}

/// Solves `f² - d g² = 1` with `deg f = 1`, `g ≠ 0` for monic quadratic
/// `d = x² + bx + c` from its coefficient system
/// `α² = γ²`, `2αβ = bγ²`, `β² - cγ² = 1`.
pub fn degree_one_solution(d: &P) -> Option<(P, P)> {
    let (b, c) = (d.coeff(1), d.coeff(0));
    // γ ≠ 0 forces α = ±γ, β = ±bγ/2 and γ²(b²/4 - c) = 1.
    let k = b.clone() * b.clone() * q("1/4") - c.clone();
    let gamma = Field::div(&int(1), &rational_sqrt(&k)?).ok()?;
    let alpha = gamma.clone();
    let beta = b.clone() * gamma.clone() * q("1/2");
    let f = P::new(vec![beta.clone(), alpha.clone()]);
    let g = P::constant(gamma.clone());
    let residual = &(&(&f * &f) - &(&(d * &g) * &g)) - &P::one();
    assert!(residual.is_zero(), "coefficient system solved wrongly");
    Some((f, g))
}

pub fn oracles() -> Outcome {
    let mut checked = 0;
    for d in [
        "x^2 + 1",
        "x^2 - 3*x + 7/4",
        "x^4 + 2*x^3 - 7*x^2 - 4*x + 10",
        "x^4 - 5*x + 1/3",
        "x^6 + x - 2",
    ] {
        sqrt_by_squaring(&p(d), 24)?;
        checked += 1;
    }
    let mut quadratics = 0;
    for bn in -6i64..=6 {
        for cn in -8i64..=8 {
            let (b, c) = (Rational::new(bn, 2).unwrap(), Rational::new(cn, 3).unwrap());
            let d = P::new(vec![c, b, int(1)]);
            if d.sqrt_exact().is_some() {
                continue;
            }
            let s = minimal_solution(&d, 16).map_err(|e| e.to_string())?.ok_or("no solution")?;
            // Degree 0 needs g = 0, so the only smaller shape is degree 1.
            match degree_one_solution(&d) {
                Some((f, g)) => ensure(s.f.degree() == Some(1) && (s.f.clone(), s.g.clone()) == (f, g), || {
                    format!("{d}: degree-1 solution exists, got ({}, {})", s.f, s.g)
                })?,
                None => ensure(s.f.degree() == Some(2), || format!("{d}: got degree {:?}", s.f.degree()))?,
            }
            quadratics += 1;
        }
    }
    Ok(format!("{checked} series squared, {quadratics} quadratic minimal solutions"))
}
