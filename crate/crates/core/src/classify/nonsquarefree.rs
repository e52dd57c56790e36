//! Monic quartics `D(x)(x - a)²` with a Pell solution over ℤ[x].
//!
//! A solution for `D(x)(x - a)²` is a solution `(F_n, G_n)` of the
//! quadratic `D` with `G_n(a) = 0`. An integral power of the minimal
//! solution of `D` needs an integral leading coefficient, which leaves the
//! quadratics `x² + s` with `s ∈ {±1, ±2}` and `x² + x`. For each one the
//! integer roots of the `G_n` are found by a bounded scan: when
//! `|F_1(a)| ≥ 1` and `G_1(a) ≠ 0`, `|G_n(a)|` is strictly increasing.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::canonical::{canonicalize, CanonicalQuartic};
use super::ClassifyError;
use crate::arith::{Field, Rational};
use crate::config::RunConfig;
use crate::pell::{minimal_solution, power_solution, PellError, PellSolution};
use crate::poly::Poly;

/// A monic quadratic family member and why it is kept or discarded.
#[derive(Debug, Clone, Serialize)]
pub struct QuadraticCase {
    pub quadratic: Poly<Rational>,
    pub admissible: bool,
    pub reason: String,
}

/// Largest power of two dividing `n`, as an exponent; `n ≠ 0`.
fn two_adic(n: &BigInt) -> u64 {
    n.trailing_zeros().unwrap_or(0)
}

/// The monic quadratics, up to integer shifts, whose minimal solution has
/// an integral power. For `x² + s` the `n`-th power's leading coefficient
/// is `2^(2n-1)/(-s)^n`, for `x² + x + s` it is `2^(4n-1)/(1-4s)^n`. By
/// [`lead_law_admits`] the denominator `t` must satisfy `|t| < 2^k`, so the
/// finite ranges below are exhaustive.
pub fn admissible_quadratics() -> Vec<QuadraticCase> {
    let mut out = Vec::new();
    for s in -4i64..=4 {
        if s == 0 {
            // x² is a square.
            continue;
        }
        let t = BigInt::from(-s);
        let admissible = lead_law_admits(2, &t);
        out.push(QuadraticCase {
            quadratic: Poly::from_ints(&[s, 0, 1]),
            admissible,
            reason: if admissible {
                format!("2^(2n-1)/({})^n is an integer for n = 1", -s)
            } else {
                format!("2^(2n-1)/({})^n is never an integer", -s)
            },
        });
    }
    for s in -4i64..=4 {
        let t = BigInt::from(1 - 4 * s);
        let admissible = lead_law_admits(4, &t);
        out.push(QuadraticCase {
            quadratic: Poly::from_ints(&[s, 1, 1]),
            admissible,
            reason: if admissible {
                format!("2^(4n-1)/({})^n is an integer for n = 1", 1 - 4 * s)
            } else {
                format!("2^(4n-1)/({})^n is never an integer", 1 - 4 * s)
            },
        });
    }
    out
}

/// True when `2^(k·n - 1)/t^n ∈ ℤ` for some `n ≥ 1`: `t = ±2^j` and
/// `j·n ≤ k·n - 1` for some `n`, i.e. `j < k`.
pub fn lead_law_admits(k: u64, t: &BigInt) -> bool {
    if t.is_zero() {
        return false;
    }
    let odd = t.abs() >> two_adic(t);
    odd.is_one() && two_adic(t) < k
}

/// Integer roots of `G_n` for `|a| ≤ window`.
#[derive(Debug, Clone, Serialize)]
pub struct RootScan {
    pub quadratic: Poly<Rational>,
    pub window: i64,
    /// A bound past which `|F_1(a)| > 1` and `G_1(a) ≠ 0`.
    pub cauchy_bound: i64,
    /// `(a, n)` with `G_n(a) = 0`, `n ≥ 1`.
    #[serde(serialize_with = "serialize_roots")]
    pub roots: Vec<(i64, u32)>,
}

fn serialize_roots<S: serde::Serializer>(r: &[(i64, u32)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(r.iter().map(|(a, n)| serde_json::json!({ "a": a, "n": n })))
}

/// `1 + max |c_i / c_n|`, rounded up.
fn cauchy_bound(p: &Poly<Rational>) -> i64 {
    let Some(lead) = p.lead() else { return 0 };
    let m = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| Field::div(c, lead).expect("nonzero").abs())
        .max()
        .unwrap_or_else(Rational::zero);
    let ceil = (m.numer() + m.denom() - BigInt::one()) / m.denom();
    1 + i64::try_from(ceil).expect("small bound")
}

/// Scans `a ∈ [-window, window]`. For each `a` the sequence `G_n(a)` is
/// extended until a zero appears or the growth condition holds.
pub fn scan_roots(d: &Poly<Rational>, window: i64) -> Result<RootScan, ClassifyError> {
    let s = minimal_solution(d, crate::contfrac::DEFAULT_MAX_STEPS)?
        .ok_or_else(|| PellError::NotPellian(d.to_string()))?;
    let one = Poly::one();
    let bound = [&s.f - &one, &s.f + &one, s.g.clone()]
        .iter()
        .filter(|p| !p.is_constant())
        .map(cauchy_bound)
        .max()
        .unwrap_or(0);
    let mut roots = Vec::new();
    for a in -window..=window {
        let x = Rational::from_int(a);
        let two_f = Rational::from_int(2) * s.f.eval(&x);
        let (mut prev, mut cur) = (Rational::zero(), s.g.eval(&x));
        let mut n = 1u32;
        loop {
            if cur.is_zero() {
                roots.push((a, n));
                break;
            }
            let next = &two_f * &cur - &prev;
            if next.abs() > cur.abs() && two_f.abs() >= Rational::from_int(2) {
                break;
            }
            // |2F_1(a)| < 2 with F_1(a) an integer: the sequence is
            // periodic with period dividing 6.
            if n > 12 {
                break;
            }
            prev = cur;
            cur = next;
            n += 1;
        }
    }
    Ok(RootScan {
        quadratic: d.clone(),
        window,
        cauchy_bound: bound,
        roots,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct NonsquarefreeForm {
    pub quadratic: Poly<Rational>,
    pub root: i64,
    pub index: u32,
    pub quartic: Poly<Rational>,
    pub canonical: CanonicalQuartic,
    pub solution: PellSolution<Rational>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NonsquarefreeReport {
    pub schema: u32,
    pub cases: Vec<QuadraticCase>,
    pub scans: Vec<RootScan>,
    pub forms: Vec<NonsquarefreeForm>,
    /// The distinct canonical forms, sorted.
    pub canonical: Vec<Poly<Rational>>,
}

/// All Pellian monic quartics over ℤ[x] with a repeated factor, up to
/// `x ↦ ±x + c`.
pub fn classify_nonsquarefree(cfg: &RunConfig) -> Result<NonsquarefreeReport, ClassifyError> {
    let cases = admissible_quadratics();
    let mut scans = Vec::new();
    let mut forms = Vec::new();
    for case in cases.iter().filter(|c| c.admissible) {
        let dq = &case.quadratic;
        let scan = scan_roots(dq, cfg.root_window.max(1))?;
        if scan.cauchy_bound > scan.window {
            return Err(ClassifyError::WindowTooSmall {
                window: scan.window,
                bound: scan.cauchy_bound,
                quadratic: dq.to_string(),
            });
        }
        let base = minimal_solution(dq, cfg.max_steps)?.ok_or_else(|| PellError::NotPellian(dq.to_string()))?;
        for &(a, n) in &scan.roots {
            let sol = power_solution(&base, n)?;
            let lin = Poly::from_ints(&[-a, 1]);
            let (g, rem) = sol.g.div_rem(&lin).expect("nonzero divisor");
            debug_assert!(rem.is_zero());
            let quartic = &(dq * &lin) * &lin;
            let solution = PellSolution::new(sol.f.clone(), g, quartic.clone(), n).expect("same norm");
            debug_assert!(solution.is_unit() && solution.f.is_integral() && solution.g.is_integral());
            forms.push(NonsquarefreeForm {
                quadratic: dq.clone(),
                root: a,
                index: n,
                canonical: canonicalize(&quartic)?,
                quartic,
                solution,
            });
        }
        scans.push(scan);
    }
    let canonical: BTreeSet<CanonicalQuartic> = forms.iter().map(|f| f.canonical.clone()).collect();
    Ok(NonsquarefreeReport {
        schema: crate::report::SCHEMA_VERSION,
        cases,
        scans,
        forms,
        canonical: canonical.into_iter().map(|c| c.poly).collect(),
    })
}
