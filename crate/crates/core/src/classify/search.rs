//! The per-family search: bounded `(a, b)` pairs, each run through the
//! square-free test, the shift filter and the integral Pell test.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::canonical::{canonicalize, CanonicalQuartic};
use super::constraints::{
    b_free_combination, bound_a, bound_b_values, build_constraints, first_failure, merge_boxes, ABound, BBound,
    BFreeCombination, ConstraintSet, ValuationBox,
};
use super::ClassifyError;
use crate::arith::{Field, Rational};
use crate::config::RunConfig;
use crate::contfrac::{cf_expand, ContFracError};
use crate::curves::{family_quartic, ParamFamily};
use crate::pell::{is_pellian_over_z, minimal_lead, period_solution, PellSolution, PellVerdict};
use crate::poly::Poly;
use crate::report::SCHEMA_VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateStatus {
    /// A constraint fails on exact re-check.
    SievedOut,
    NonSquarefree,
    /// None of the shifts `x + c/4`, `c ∈ {0,1,2,3}`, is integral.
    NoIntegralShift,
    /// Integral after shifting, but no power of the minimal solution is.
    NotPellianOverZ,
    Survivor,
}

impl fmt::Display for CandidateStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CandidateStatus::SievedOut => "sieved_out",
            CandidateStatus::NonSquarefree => "non_squarefree",
            CandidateStatus::NoIntegralShift => "no_integral_shift",
            CandidateStatus::NotPellianOverZ => "not_pellian_over_z",
            CandidateStatus::Survivor => "survivor",
        })
    }
}

/// The first non-integral coefficient of `d(x + c/4)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftFailure {
    pub c: u8,
    pub degree: usize,
    #[serde(serialize_with = "crate::report::display_str")]
    pub coefficient: Rational,
}

/// Why a candidate was eliminated, in a form that can be re-checked.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum Certificate {
    ConstraintFailed {
        constraint: String,
        #[serde(serialize_with = "crate::report::display_str")]
        value: Rational,
    },
    /// `gcd(d, d')`, of positive degree.
    SharedFactor { gcd: Poly<Rational> },
    ShiftsFailed { shifts: Vec<ShiftFailure> },
    NoIntegralSolution { verdict: PellVerdict },
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub shift: u8,
    pub integral: Poly<Rational>,
    pub canonical: CanonicalQuartic,
    pub power: u32,
    /// Integral solution for `integral`.
    pub solution: PellSolution<Rational>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Candidate {
    pub m: u32,
    #[serde(serialize_with = "crate::report::display_str")]
    pub a: Rational,
    #[serde(serialize_with = "crate::report::display_str")]
    pub b: Rational,
    /// True for pairs from a degeneration sub-search.
    pub degenerate: bool,
    pub quartic: Option<Poly<Rational>>,
    pub status: CandidateStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// A value of `a` from the divisor bound that yields no pair.
#[derive(Debug, Clone, Serialize)]
pub struct AElimination {
    #[serde(serialize_with = "crate::report::display_str")]
    pub a: Rational,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DegenerationOutcome {
    NonSquarefree { gcd: Poly<Rational> },
    NoPeriod { steps: usize },
    Searched {
        #[serde(serialize_with = "crate::report::display_str")]
        lead: Rational,
        lead_degree: usize,
        boxes: Vec<ValuationBox>,
        pairs: usize,
    },
}

impl fmt::Display for DegenerationOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegenerationOutcome::NonSquarefree { gcd } => write!(f, "not square-free, gcd(d, d') = {gcd}"),
            DegenerationOutcome::NoPeriod { steps } => write!(f, "no period within {steps} steps"),
            DegenerationOutcome::Searched {
                lead,
                lead_degree,
                pairs,
                ..
            } => write!(f, "lead(f1) = {lead}*b^{lead_degree}, {pairs} pairs"),
        }
    }
}

/// A parameter value on a vanishing locus of the symbolic expansion,
/// searched with its own concrete expansion.
#[derive(Debug, Clone, Serialize)]
pub struct DegenerationSearch {
    #[serde(serialize_with = "crate::report::display_str")]
    pub a: Rational,
    pub conditions: Vec<String>,
    pub outcome: DegenerationOutcome,
}

#[derive(Debug, Clone, Serialize)]
pub struct Survivor {
    pub canonical: CanonicalQuartic,
    /// The `(a, b)` pairs leading to this form.
    pub pairs: Vec<[String; 2]>,
    pub power: u32,
    /// The least integral power of the minimal solution of `canonical`.
    pub solution: PellSolution<Rational>,
    pub minimal: PellSolution<Rational>,
    /// The solution read off the end of the first period.
    pub period_solution: Option<PellSolution<Rational>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub schema: u32,
    pub m: u32,
    pub config: RunConfig,
    pub constraints: ConstraintSet,
    pub combination: BFreeCombination,
    pub a_bound: ABound,
    pub a_eliminations: Vec<AElimination>,
    #[serde(serialize_with = "crate::report::display_vec")]
    pub primes: Vec<num_bigint::BigUint>,
    pub boxes: Vec<ValuationBox>,
    pub candidates: Vec<Candidate>,
    pub degenerations: Vec<DegenerationSearch>,
    pub survivors: Vec<Survivor>,
}

impl SearchReport {
    pub fn candidate(&self, a: &Rational, b: &Rational) -> Option<&Candidate> {
        self.candidates.iter().find(|c| &c.a == a && &c.b == b)
    }
}

/// Tries `d(x + c/4)` for `c = 0, 1, 2, 3`; shifts differing by an integer
/// give integral polynomials together.
pub fn shift_attempts(d: &Poly<Rational>) -> Result<(u8, Poly<Rational>), Vec<ShiftFailure>> {
    let mut failures = Vec::with_capacity(4);
    for c in 0u8..4 {
        let e = d.shift(&Rational::new(c as i64, 4).expect("nonzero"));
        match e.coeffs().iter().enumerate().rev().find(|(_, x)| !x.is_integer()) {
            None => return Ok((c, e)),
            Some((degree, x)) => failures.push(ShiftFailure {
                c,
                degree,
                coefficient: x.clone(),
            }),
        }
    }
    Err(failures)
}

pub fn shift_filter(d: &Poly<Rational>) -> Option<(u8, Poly<Rational>)> {
    shift_attempts(d).ok()
}

/// A parameter value, its constraint values and the box they give for `b`.
type ABounds = (Rational, Vec<(Rational, i32)>, BBound);

struct Pair {
    a: Rational,
    b: Rational,
    values: Vec<(Rational, i32)>,
    degenerate: bool,
}

fn evaluate(fam: &ParamFamily, labels: &[String], p: &Pair, cfg: &RunConfig) -> Result<Candidate, ClassifyError> {
    let mut cand = Candidate {
        m: fam.m,
        a: p.a.clone(),
        b: p.b.clone(),
        degenerate: p.degenerate,
        quartic: None,
        status: CandidateStatus::SievedOut,
        certificate: None,
        witness: None,
    };
    if let Some((i, value)) = first_failure(&p.values, &p.b) {
        cand.certificate = Some(Certificate::ConstraintFailed {
            constraint: labels[i].clone(),
            value,
        });
        return Ok(cand);
    }
    let d = family_quartic(fam, &p.a, &p.b)?;
    cand.quartic = Some(d.clone());
    let g = d.gcd(&d.derivative());
    if !g.is_constant() {
        cand.status = CandidateStatus::NonSquarefree;
        cand.certificate = Some(Certificate::SharedFactor { gcd: g });
        return Ok(cand);
    }
    let (shift, integral) = match shift_attempts(&d) {
        Ok(s) => s,
        Err(shifts) => {
            cand.status = CandidateStatus::NoIntegralShift;
            cand.certificate = Some(Certificate::ShiftsFailed { shifts });
            return Ok(cand);
        }
    };
    let verdict = is_pellian_over_z(&integral, cfg.power_bound, cfg.max_steps)?;
    match verdict {
        PellVerdict::Integral { power, solution, .. } => {
            cand.status = CandidateStatus::Survivor;
            cand.witness = Some(Witness {
                shift,
                canonical: canonicalize(&integral)?,
                integral,
                power,
                solution,
            });
        }
        other => {
            cand.status = CandidateStatus::NotPellianOverZ;
            cand.certificate = Some(Certificate::NoIntegralSolution { verdict: other });
        }
    }
    Ok(cand)
}

fn lead_conditions(cs: &ConstraintSet, a: &Rational) -> Vec<String> {
    let mut out: Vec<String> = cs
        .side_conditions
        .iter()
        .filter(|sc| sc.rational_roots.contains(a))
        .map(|sc| {
            let kind = serde_json::to_value(&sc.kind).expect("serializes");
            format!(
                "{} at step {}: {} = 0",
                kind.as_str().unwrap_or_default(),
                sc.index,
                sc.locus.display_with("a")
            )
        })
        .collect();
    let lead = &cs.items.last().expect("four items").expr;
    if lead.numer().eval(a).is_zero() {
        out.push(format!("lead(f1) numerator {} = 0", lead.numer().display_with("a")));
    }
    if lead.denom().eval(a).is_zero() {
        out.push(format!("lead(f1) denominator {} = 0", lead.denom().display_with("a")));
    }
    out
}

/// The concrete search at a parameter value where the symbolic constraints
/// are not valid.
fn degenerate_search(
    fam: &ParamFamily,
    cs: &ConstraintSet,
    a: &Rational,
    cfg: &RunConfig,
) -> Result<(DegenerationSearch, Vec<Pair>), ClassifyError> {
    let conditions = lead_conditions(cs, a);
    let d1 = family_quartic(fam, a, &Rational::one())?;
    let done = |outcome| {
        Ok((
            DegenerationSearch {
                a: a.clone(),
                conditions: conditions.clone(),
                outcome,
            },
            Vec::new(),
        ))
    };
    let g = d1.gcd(&d1.derivative());
    if !g.is_constant() {
        return done(DegenerationOutcome::NonSquarefree { gcd: g });
    }
    let cf = match cf_expand(&d1, cfg.max_steps) {
        Ok(cf) => cf,
        Err(ContFracError::PerfectSquare(_)) => return done(DegenerationOutcome::NonSquarefree { gcd: g }),
        Err(e) => return Err(e.into()),
    };
    let Some(ld) = minimal_lead(&cf) else {
        return done(DegenerationOutcome::NoPeriod { steps: cfg.max_steps });
    };
    let mut values = Vec::with_capacity(4);
    for it in &cs.items[..3] {
        values.push((it.expr.eval(a)?, it.weight));
    }
    values.push((ld.lead.clone(), -(ld.degree as i32)));
    let bb = bound_b_values(&values)?;
    let pairs: Vec<Pair> = bb
        .values
        .iter()
        .map(|b| Pair {
            a: a.clone(),
            b: b.clone(),
            values: values.clone(),
            degenerate: true,
        })
        .collect();
    let search = DegenerationSearch {
        a: a.clone(),
        conditions,
        outcome: DegenerationOutcome::Searched {
            lead: ld.lead,
            lead_degree: ld.degree,
            boxes: bb.boxes,
            pairs: pairs.len(),
        },
    };
    Ok((search, pairs))
}

fn survivor_record(canonical: CanonicalQuartic, pairs: Vec<[String; 2]>, cfg: &RunConfig) -> Result<Survivor, ClassifyError> {
    let verdict = is_pellian_over_z(&canonical.poly, cfg.power_bound, cfg.max_steps)?;
    let PellVerdict::Integral {
        power,
        solution,
        minimal,
    } = verdict
    else {
        unreachable!("a shift of an integral Pellian quartic is Pellian over Z");
    };
    let cf = cf_expand(&canonical.poly, cfg.max_steps)?;
    Ok(Survivor {
        period_solution: period_solution(&cf),
        canonical,
        pairs,
        power,
        solution,
        minimal,
    })
}

/// Runs the whole search for the family of torsion order `m`.
pub fn search_torsion(m: u32, cfg: &RunConfig) -> Result<SearchReport, ClassifyError> {
    let fam = ParamFamily::get(m)?;
    let cs = build_constraints(m, cfg.symbolic_steps)?;
    let combination = b_free_combination(&cs)?;
    let a_bound = bound_a(&combination.expr)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| ClassifyError::Pool(e.to_string()))?;
    pool.install(|| search_in_pool(fam, cs, combination, a_bound, cfg))
}

fn search_in_pool(
    fam: &ParamFamily,
    cs: ConstraintSet,
    combination: BFreeCombination,
    a_bound: ABound,
    cfg: &RunConfig,
) -> Result<SearchReport, ClassifyError> {
    let generic: Vec<&Rational> = a_bound
        .values
        .iter()
        .filter(|a| !cs.degeneration_points.contains(a))
        .collect();
    let bounds: Vec<ABounds> = generic
        .par_iter()
        .map(|&a| {
            let values = cs.values_at(a)?;
            let bb = bound_b_values(&values)?;
            Ok((a.clone(), values, bb))
        })
        .collect::<Result<_, ClassifyError>>()?;

    let mut a_eliminations = Vec::new();
    let mut pairs = Vec::new();
    for (a, values, bb) in &bounds {
        if bb.values.is_empty() {
            let reason = match bb.boxes.iter().find(|b| b.lo > b.hi) {
                Some(b) => format!("empty valuation interval for p = {}: [{}, {}]", b.prime, b.lo, b.hi),
                None => "no sign of b satisfies the constraints".into(),
            };
            a_eliminations.push(AElimination { a: a.clone(), reason });
        }
        for b in &bb.values {
            pairs.push(Pair {
                a: a.clone(),
                b: b.clone(),
                values: values.clone(),
                degenerate: false,
            });
        }
    }
    let boxes = merge_boxes(bounds.iter().map(|(_, _, bb)| bb));
    let primes = boxes.iter().map(|b| b.prime.clone()).collect();

    let mut degenerations = Vec::new();
    for a in &cs.degeneration_points {
        let (search, extra) = degenerate_search(fam, &cs, a, cfg)?;
        degenerations.push(search);
        pairs.extend(extra);
    }

    let labels: Vec<String> = cs.items.iter().map(|it| it.label.clone()).collect();
    let candidates: Vec<Candidate> = pairs
        .par_iter()
        .map(|p| evaluate(fam, &labels, p, cfg))
        .collect::<Result<_, _>>()?;

    let mut by_form: BTreeMap<CanonicalQuartic, Vec<[String; 2]>> = BTreeMap::new();
    for c in &candidates {
        if let Some(w) = &c.witness {
            by_form
                .entry(w.canonical.clone())
                .or_default()
                .push([c.a.to_string(), c.b.to_string()]);
        }
    }
    let survivors = by_form
        .into_iter()
        .map(|(canonical, pairs)| survivor_record(canonical, pairs, cfg))
        .collect::<Result<_, _>>()?;

    Ok(SearchReport {
        schema: SCHEMA_VERSION,
        m: fam.m,
        config: cfg.clone(),
        constraints: cs,
        combination,
        a_bound,
        a_eliminations,
        primes,
        boxes,
        candidates,
        degenerations,
        survivors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Poly<Rational> {
        s.parse().unwrap()
    }

    #[test]
    fn shift_examples() {
        let d = p("x^4 + 7/8*x^2 + x + 113/256");
        let fails = shift_attempts(&d).unwrap_err();
        assert_eq!(fails.len(), 4);
        let d = p("x^4 - 17/2*x^2 + 4*x + 161/16");
        assert_eq!(shift_filter(&d), Some((2, p("x^4 + 2*x^3 - 7*x^2 - 4*x + 10"))));
        let d = p("x^4 + x + 1");
        assert_eq!(shift_filter(&d), Some((0, d.clone())));
    }

    #[test]
    fn search_four() {
        let cfg = RunConfig {
            workers: 2,
            ..RunConfig::default()
        };
        let r = search_torsion(4, &cfg).unwrap();
        assert!(r.candidates.iter().filter(|c| !c.degenerate).count() <= 84);
        assert_eq!(r.survivors.len(), 1);
        assert_eq!(r.survivors[0].canonical.poly, p("x^4 + 2*x^3 - 7*x^2 - 4*x + 10"));
        let status = |a: &str, b: &str| r.candidate(&q(a), &q(b)).unwrap().status;
        assert_eq!(status("2", "4"), CandidateStatus::NoIntegralShift);
        assert_eq!(status("-1/16", "1"), CandidateStatus::NonSquarefree);
        assert_eq!(status("-1/16", "-1"), CandidateStatus::NonSquarefree);
        assert_eq!(status("-1/64", "1/2"), CandidateStatus::Survivor);
        assert_eq!(status("-1/64", "-1/2"), CandidateStatus::Survivor);
        for c in &r.candidates {
            assert_eq!(c.certificate.is_some(), c.status != CandidateStatus::Survivor);
        }
        let ps = r.survivors[0].period_solution.as_ref().unwrap();
        assert_eq!(ps.f.degree(), Some(8));
        assert_eq!(ps.f.coeff(0), q("721"));
        assert_eq!(ps.g.coeff(0), q("-228"));
    }
}
