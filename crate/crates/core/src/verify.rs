//! End-to-end checks of the two classification results against their
//! expected outputs.

use serde::Serialize;

use crate::arith::Rational;
use crate::classify::{classify_nonsquarefree, search_torsion, CandidateStatus, ClassifyError, SearchReport};
use crate::config::RunConfig;
use crate::curves::TORSION_ORDERS;
use crate::poly::Poly;

/// The only square-free Pellian monic quartic over ℤ[x] with a torsion
/// point of order ≥ 4, up to `x ↦ ±x + c`.
pub const SQUAREFREE_SURVIVOR: &str = "x^4 + 2*x^3 - 7*x^2 - 4*x + 10";
/// Its solution read off the end of the first period.
pub const SURVIVOR_F: &str =
    "2*x^8 + 24*x^7 + 100*x^6 + 120*x^5 - 266*x^4 - 792*x^3 - 244*x^2 + 912*x + 721";
pub const SURVIVOR_G: &str = "2*x^6 + 22*x^5 + 86*x^4 + 118*x^3 - 74*x^2 - 334*x - 228";
/// The nonsquare-free classification, in canonical form.
pub const NONSQUAREFREE_FORMS: [&str; 5] = [
    "x^4 - 2*x^2",
    "x^4 - x^2",
    "x^4 + x^2",
    "x^4 + 2*x^2",
    "x^4 + 2*x^3 - x^2",
];

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

impl Check {
    fn new(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check {
            name: name.into(),
            ok: expected == actual,
            expected,
            actual,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub schema: u32,
    pub checks: Vec<Check>,
}

impl TheoremReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    /// `-`/`+` lines for the failed checks.
    pub fn diff(&self) -> String {
        let mut out = String::new();
        for c in self.checks.iter().filter(|c| !c.ok) {
            out.push_str(&format!("{}\n- {}\n+ {}\n", c.name, c.expected, c.actual));
        }
        out
    }
}

fn joined<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    format!("[{}]", v.join(", "))
}

fn status_of(r: &SearchReport, a: &str, b: &str) -> String {
    let (a, b): (Rational, Rational) = (a.parse().expect("literal"), b.parse().expect("literal"));
    r.candidate(&a, &b)
        .map_or_else(|| "absent".to_string(), |c| c.status.to_string())
}

/// Checks for one family's search report.
pub fn search_checks(r: &SearchReport) -> Vec<Check> {
    let m = r.m;
    let forms = joined(r.survivors.iter().map(|s| &s.canonical));
    if m != 4 {
        return vec![Check::new(format!("m = {m}: survivors"), "[]", forms)];
    }
    let mut out = vec![Check::new("m = 4: survivors", format!("[{SQUAREFREE_SURVIVOR}]"), forms)];
    let generic = r.candidates.iter().filter(|c| !c.degenerate).count();
    out.push(Check::new("m = 4: at most 84 pairs", true, generic <= 84));
    let expect = [
        ("2", "4", CandidateStatus::NoIntegralShift),
        ("-1/16", "1", CandidateStatus::NonSquarefree),
        ("-1/16", "-1", CandidateStatus::NonSquarefree),
        ("-1/64", "1/2", CandidateStatus::Survivor),
        ("-1/64", "-1/2", CandidateStatus::Survivor),
    ];
    for (a, b, s) in expect {
        out.push(Check::new(format!("m = 4: pair ({a}, {b})"), s, status_of(r, a, b)));
    }
    if let Some(ps) = r.survivors.first().and_then(|s| s.period_solution.as_ref()) {
        out.push(Check::new("m = 4: witness f", SURVIVOR_F, &ps.f));
        out.push(Check::new("m = 4: witness g", SURVIVOR_G, &ps.g));
        let exact = ps.verify() && ps.is_unit() && ps.f.is_integral() && ps.g.is_integral();
        out.push(Check::new("m = 4: witness f^2 - d*g^2 = 1 over Z[x]", true, exact));
    }
    out
}

pub fn nonsquarefree_checks(forms: &[Poly<Rational>]) -> Vec<Check> {
    let mut want: Vec<String> = NONSQUAREFREE_FORMS.iter().map(|s| s.to_string()).collect();
    want.sort();
    let mut got: Vec<String> = forms.iter().map(|p| p.to_string()).collect();
    got.sort();
    vec![Check::new("nonsquare-free forms", joined(want), joined(got))]
}

/// Runs every family search and the nonsquare-free classification.
pub fn verify_theorems(cfg: &RunConfig) -> Result<(TheoremReport, Vec<SearchReport>), ClassifyError> {
    let mut checks = Vec::new();
    let mut reports = Vec::new();
    for m in TORSION_ORDERS {
        let r = search_torsion(m, cfg)?;
        checks.extend(search_checks(&r));
        reports.push(r);
    }
    let ns = classify_nonsquarefree(cfg)?;
    checks.extend(nonsquarefree_checks(&ns.canonical));
    Ok((
        TheoremReport {
            schema: crate::report::SCHEMA_VERSION,
            checks,
        },
        reports,
    ))
}
