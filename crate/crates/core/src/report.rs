//! Serialization helpers and the JSON / TSV / text renderings of reports.

use std::fmt::{self, Display, Write as _};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::arith::Rational;
use crate::classify::{CandidateStatus, NonsquarefreeReport, SearchReport};
use crate::poly::Poly;

/// Version of the JSON layout.
pub const SCHEMA_VERSION: u32 = 1;

pub(crate) fn display_str<T: Display, S: Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub(crate) fn display_in_a<S: Serializer>(p: &Poly<Rational>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&p.display_with("a"))
}

pub(crate) fn display_vec<T: Display, S: Serializer>(xs: &[T], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Tsv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            _ => Err(format!("unknown format {s:?} (expected text, json or tsv)")),
        }
    }
}

impl Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Tsv => "tsv",
        })
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

const TSV_HEADER: &str = "m\tcombination\ta_divisors\ta_values\tpairs\tsieved_out\tnon_squarefree\tno_integral_shift\tnot_pellian_over_z\tsurvivor\tdegenerations\tsurvivors";

fn tsv_row(r: &SearchReport) -> String {
    let count = |s: CandidateStatus| r.candidates.iter().filter(|c| c.status == s).count();
    let comb: Vec<String> = r.combination.exponents.iter().map(u32::to_string).collect();
    let surv: Vec<String> = r.survivors.iter().map(|s| s.canonical.to_string()).collect();
    format!(
        "{}\t({})\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        r.m,
        comb.join(","),
        r.a_bound.divisor_candidates,
        r.a_bound.values.len(),
        r.candidates.len(),
        count(CandidateStatus::SievedOut),
        count(CandidateStatus::NonSquarefree),
        count(CandidateStatus::NoIntegralShift),
        count(CandidateStatus::NotPellianOverZ),
        count(CandidateStatus::Survivor),
        r.degenerations.len(),
        surv.join("; "),
    )
}

/// One summary line per torsion order.
pub fn search_tsv(reports: &[SearchReport]) -> String {
    let mut out = String::from(TSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&tsv_row(r));
        out.push('\n');
    }
    out
}

pub fn search_text(r: &SearchReport) -> String {
    let mut o = String::new();
    let _ = writeln!(o, "torsion order m = {}", r.m);
    let _ = writeln!(o, "constraints (expr/b^w in Z):");
    for it in &r.constraints.items {
        let _ = writeln!(o, "  {:<9} w = {:>3}  {}", it.label, it.weight, it.expr);
    }
    let e: Vec<String> = r.combination.exponents.iter().map(u32::to_string).collect();
    let _ = writeln!(o, "b-free combination e = ({}): {}", e.join(","), r.combination.expr);
    let _ = writeln!(
        o,
        "a: {} divisor candidates, {} with integral combination",
        r.a_bound.divisor_candidates,
        r.a_bound.values.len()
    );
    for b in &r.boxes {
        let _ = writeln!(o, "  v_{}(b) in [{}, {}]", b.prime, b.lo, b.hi);
    }
    let _ = writeln!(o, "candidates: {}", r.candidates.len());
    for c in &r.candidates {
        let _ = writeln!(o, "  a = {:<10} b = {:<10} {}", c.a.to_string(), c.b.to_string(), c.status);
    }
    for d in &r.degenerations {
        let _ = writeln!(o, "degenerate a = {}: {}", d.a, d.outcome);
    }
    let _ = writeln!(o, "survivors: {}", r.survivors.len());
    for s in &r.survivors {
        let _ = writeln!(o, "  d = {}", s.canonical);
        let _ = writeln!(o, "    f = {}", s.solution.f);
        let _ = writeln!(o, "    g = {}", s.solution.g);
        if let Some(p) = &s.period_solution {
            let _ = writeln!(o, "    period f = {}", p.f);
            let _ = writeln!(o, "    period g = {}", p.g);
        }
    }
    o
}

pub fn render_search(reports: &[SearchReport], format: Format) -> String {
    match format {
        Format::Json if reports.len() == 1 => to_json(&reports[0]),
        Format::Json => to_json(&reports),
        Format::Tsv => search_tsv(reports),
        Format::Text => reports.iter().map(search_text).collect::<Vec<_>>().join("\n"),
    }
}

pub fn render_nonsquarefree(r: &NonsquarefreeReport, format: Format) -> String {
    match format {
        Format::Json => to_json(r),
        Format::Tsv => {
            let mut o = String::from("D\ta\tn\tcanonical\n");
            for f in &r.forms {
                let _ = writeln!(o, "{}\t{}\t{}\t{}", f.quadratic, f.root, f.index, f.canonical);
            }
            o
        }
        Format::Text => {
            let mut o = String::new();
            for case in &r.cases {
                let _ = writeln!(o, "D = {}: {}", case.quadratic, case.reason);
            }
            for s in &r.scans {
                let roots: Vec<String> = s.roots.iter().map(|(a, n)| format!("a = {a} (n = {n})")).collect();
                let _ = writeln!(
                    o,
                    "scan D = {} over |a| <= {} (bound {}): {}",
                    s.quadratic,
                    s.window,
                    s.cauchy_bound,
                    if roots.is_empty() { "no roots".to_string() } else { roots.join(", ") }
                );
            }
            let _ = writeln!(o, "forms: {}", r.canonical.len());
            for c in &r.canonical {
                let _ = writeln!(o, "  {c}");
            }
            o
        }
    }
}
