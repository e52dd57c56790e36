//! One function per subcommand, each rendering its report in the chosen
//! format.

use std::fmt::Write as _;

use pellian::classify::{self, canonicalize, shift_filter, CandidateStatus, Certificate};
use pellian::contfrac::{abel_check, cf_expand, CfExpansion};
use pellian::curves::{adams_razar_curve, check_period_torsion, depress, family_quartic, torsion_order, ParamFamily};
use pellian::pell::{is_pellian_over_z, period_solution, PellVerdict};
use pellian::report::{self, Format};
use pellian::verify;
use pellian::{Poly, Rational, RunConfig};
use serde_json::json;

use crate::{Outcome, EXIT_INCONCLUSIVE, EXIT_MISMATCH, EXIT_OK};

type CmdResult = Result<Outcome, String>;

fn parse_poly(text: &str) -> Result<Poly<Rational>, String> {
    text.parse::<Poly<Rational>>()
        .map_err(|e| format!("cannot parse {text:?}: {e}"))
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    text.parse::<Rational>().map_err(|e| e.to_string())
}

fn done(text: String, code: u8) -> CmdResult {
    Ok(Outcome { text, code })
}

fn expansion_text(cf: &CfExpansion<Rational>) -> String {
    let tail: Vec<String> = cf.partial_quotients.iter().map(|q| q.to_string()).collect();
    format!("[{}; {}]", cf.a0, tail.join(", "))
}

pub fn cf(text: &str, cfg: &RunConfig, fmt: Format) -> CmdResult {
    let d = parse_poly(text)?;
    let cf = cf_expand(&d, cfg.max_steps).map_err(|e| e.to_string())?;
    let abel = cf.period.is_some() && abel_check(&cf);
    let code = if cf.truncated { EXIT_INCONCLUSIVE } else { EXIT_OK };
    let out = match fmt {
        Format::Json => report::to_json(&json!({
            "schema": report::SCHEMA_VERSION,
            "expansion": cf,
            "abel": abel,
        })),
        Format::Tsv => {
            let mut o = String::from("n\tquotient\n");
            for n in 0..cf.quotient_count() {
                let _ = writeln!(o, "{n}\t{}", cf.quotient(n).expect("in range"));
            }
            o
        }
        Format::Text => {
            let mut o = String::new();
            let _ = writeln!(o, "d = {}", cf.d);
            let _ = writeln!(o, "sqrt(d) = {}", expansion_text(&cf));
            match cf.period {
                Some(p) => {
                    let _ = writeln!(o, "period: start {}, length {}", p.start, p.length);
                    let _ = writeln!(o, "abel: {}", if abel { "ok" } else { "fails" });
                }
                None => {
                    let _ = writeln!(o, "truncated: no period within {} steps", cfg.max_steps);
                }
            }
            o
        }
    };
    done(out, code)
}

fn verdict_line(v: &PellVerdict) -> String {
    match v {
        PellVerdict::Integral { power, .. } => format!("pellian over Z[x]: yes (power {power})"),
        PellVerdict::ProvenAbsent { minimal } => format!(
            "pellian over Z[x]: no (leading coefficient {} of f is not an integer)",
            minimal.f.lead().expect("nonzero")
        ),
        PellVerdict::AbsentAtBound { bound, .. } => {
            format!("pellian over Z[x]: unknown (no integral power up to {bound})")
        }
        PellVerdict::NoPeriod { steps } => format!("no period within {steps} steps"),
    }
}

pub fn pell(text: &str, cfg: &RunConfig, fmt: Format) -> CmdResult {
    let d = parse_poly(text)?;
    let verdict = is_pellian_over_z(&d, cfg.power_bound, cfg.max_steps).map_err(|e| e.to_string())?;
    let period = match verdict {
        PellVerdict::NoPeriod { .. } => None,
        _ => period_solution(&cf_expand(&d, cfg.max_steps).map_err(|e| e.to_string())?),
    };
    let code = match verdict {
        PellVerdict::NoPeriod { .. } | PellVerdict::AbsentAtBound { .. } => EXIT_INCONCLUSIVE,
        _ => EXIT_OK,
    };
    let out = match fmt {
        Format::Json => report::to_json(&json!({
            "schema": report::SCHEMA_VERSION,
            "d": d,
            "result": verdict,
            "period_solution": period,
        })),
        Format::Tsv => {
            let mut o = String::from("kind\tf\tg\n");
            if let Some(s) = verdict.minimal() {
                let _ = writeln!(o, "minimal\t{}\t{}", s.f, s.g);
            }
            if let Some(s) = verdict.solution() {
                let _ = writeln!(o, "integral\t{}\t{}", s.f, s.g);
            }
            if let Some(s) = &period {
                let _ = writeln!(o, "period\t{}\t{}", s.f, s.g);
            }
            o
        }
        Format::Text => {
            let mut o = String::new();
            let _ = writeln!(o, "d = {d}");
            if let Some(s) = verdict.minimal() {
                let _ = writeln!(o, "f = {}", s.f);
                let _ = writeln!(o, "g = {}", s.g);
            }
            let _ = writeln!(o, "{}", verdict_line(&verdict));
            if let PellVerdict::Integral { power, solution, .. } = &verdict {
                if *power > 1 {
                    let _ = writeln!(o, "integral f = {}", solution.f);
                    let _ = writeln!(o, "integral g = {}", solution.g);
                }
            }
            if let Some(s) = period.as_ref().filter(|s| Some(*s) != verdict.minimal()) {
                let _ = writeln!(o, "end of period f = {}", s.f);
                let _ = writeln!(o, "end of period g = {}", s.g);
            }
            o
        }
    };
    done(out, code)
}

pub fn jacobian(text: &str, cfg: &RunConfig, fmt: Format) -> CmdResult {
    let d = parse_poly(text)?;
    if d.degree() != Some(4) || !d.is_monic() {
        return Err(format!("expected a monic quartic, got {d}"));
    }
    let (q, shift) = depress(&d);
    let (curve, point) = adams_razar_curve(&q).map_err(|e| e.to_string())?;
    let torsion = torsion_order(&point);
    let pt = check_period_torsion(&d, cfg.max_steps).ok();
    let code = if pt.is_none() && torsion.is_some() { EXIT_INCONCLUSIVE } else { EXIT_OK };
    let out = match fmt {
        Format::Json => report::to_json(&json!({
            "schema": report::SCHEMA_VERSION,
            "d": d,
            "depressed": q,
            "shift": shift.to_string(),
            "curve": curve,
            "point": point,
            "torsion": torsion,
            "period": pt.map(|p| p.period),
            "consistent": pt.map(|p| p.consistent),
        })),
        Format::Tsv => format!(
            "d\tcurve\tpoint\ttorsion\tperiod\n{d}\t{curve}\t{point}\t{}\t{}\n",
            torsion.map_or("inf".into(), |m| m.to_string()),
            pt.map_or("-".into(), |p| p.period.to_string())
        ),
        Format::Text => {
            let mut o = String::new();
            let _ = writeln!(o, "d(x - ({shift})) = {q}");
            let _ = writeln!(o, "curve: {curve}");
            let _ = writeln!(o, "point: {point}");
            match torsion {
                Some(m) => {
                    let _ = writeln!(o, "torsion order: {m}");
                }
                None => {
                    let _ = writeln!(o, "torsion order: infinite");
                }
            }
            match pt {
                Some(p) => {
                    let _ = writeln!(o, "period: {}", p.period);
                    let _ = writeln!(o, "consistent: {}", p.consistent);
                }
                None => {
                    let _ = writeln!(o, "period: none within {} steps", cfg.max_steps);
                }
            }
            o
        }
    };
    done(out, code)
}

pub fn family(m: u32, a: &str, b: &str, fmt: Format) -> CmdResult {
    let fam = ParamFamily::get(m).map_err(|e| e.to_string())?;
    let (a, b) = (parse_rational(a)?, parse_rational(b)?);
    let d = family_quartic(fam, &a, &b).map_err(|e| e.to_string())?;
    let shifted = shift_filter(&d);
    let canonical = match &shifted {
        Some((_, di)) => Some(canonicalize(di).map_err(|e| e.to_string())?),
        None => None,
    };
    let out = match fmt {
        Format::Json => report::to_json(&json!({
            "schema": report::SCHEMA_VERSION,
            "m": m,
            "a": a.to_string(),
            "b": b.to_string(),
            "quartic": d,
            "shift": shifted.as_ref().map(|(c, _)| c),
            "integral": shifted.as_ref().map(|(_, p)| p),
            "canonical": canonical.as_ref().map(|c| &c.poly),
        })),
        Format::Tsv => format!(
            "m\ta\tb\tquartic\tintegral\n{m}\t{a}\t{b}\t{d}\t{}\n",
            shifted.as_ref().map_or("-".into(), |(_, p)| p.to_string())
        ),
        Format::Text => {
            let mut o = format!("d = {d}\n");
            match (&shifted, &canonical) {
                (Some((c, p)), Some(k)) => {
                    let _ = writeln!(o, "d(x + {c}/4) = {p}");
                    let _ = writeln!(o, "canonical: {k}");
                }
                _ => {
                    let _ = writeln!(o, "no shift x + c/4 with c in 0..3 is integral");
                }
            }
            o
        }
    };
    done(out, EXIT_OK)
}

pub fn search(orders: &[u32], cfg: &RunConfig, fmt: Format) -> CmdResult {
    let orders: Vec<u32> = if orders.is_empty() {
        pellian::curves::TORSION_ORDERS.to_vec()
    } else {
        orders.to_vec()
    };
    let mut reports = Vec::with_capacity(orders.len());
    for m in orders {
        reports.push(classify::search_torsion(m, cfg).map_err(|e| e.to_string())?);
    }
    let inconclusive = reports.iter().flat_map(|r| &r.candidates).any(|c| {
        c.status == CandidateStatus::NotPellianOverZ
            && matches!(
                &c.certificate,
                Some(Certificate::NoIntegralSolution {
                    verdict: PellVerdict::AbsentAtBound { .. } | PellVerdict::NoPeriod { .. }
                })
            )
    });
    let code = if inconclusive { EXIT_INCONCLUSIVE } else { EXIT_OK };
    done(report::render_search(&reports, fmt), code)
}

pub fn classify_nonsquarefree(cfg: &RunConfig, fmt: Format) -> CmdResult {
    let r = classify::classify_nonsquarefree(cfg).map_err(|e| e.to_string())?;
    done(report::render_nonsquarefree(&r, fmt), EXIT_OK)
}

pub fn verify_theorems(cfg: &RunConfig, fmt: Format) -> CmdResult {
    let (r, _) = verify::verify_theorems(cfg).map_err(|e| e.to_string())?;
    let code = if r.ok() { EXIT_OK } else { EXIT_MISMATCH };
    let out = match fmt {
        Format::Json => report::to_json(&r),
        Format::Tsv => {
            let mut o = String::from("check\tok\texpected\tactual\n");
            for c in &r.checks {
                let _ = writeln!(o, "{}\t{}\t{}\t{}", c.name, c.ok, c.expected, c.actual);
            }
            o
        }
        Format::Text => {
            let mut o = String::new();
            for c in &r.checks {
                let _ = writeln!(o, "{} {}", if c.ok { "ok  " } else { "FAIL" }, c.name);
            }
            if r.ok() {
                o.push_str("all checks reproduced\n");
            } else {
                o.push_str(&r.diff());
            }
            o
        }
    };
    done(out, code)
}
