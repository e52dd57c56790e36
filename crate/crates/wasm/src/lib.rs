//! Browser bindings: each export takes text input and returns a JSON
//! document, or an error message.

use pellian::classify::{canonicalize, shift_filter};
use pellian::contfrac::{abel_check, cf_expand};
use pellian::curves::{family_quartic, ParamFamily};
use pellian::pell::{is_pellian_over_z, period_solution, PellVerdict};
use pellian::report::SCHEMA_VERSION;
use pellian::{Poly, Rational, RunConfig};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn poly(text: &str) -> Result<Poly<Rational>, String> {
    text.parse().map_err(|e| format!("cannot parse {text:?}: {e}"))
}

fn steps(max_steps: u32) -> usize {
    if max_steps == 0 {
        RunConfig::default().max_steps
    } else {
        max_steps as usize
    }
}

fn to_string(v: serde_json::Value) -> String {
    serde_json::to_string(&v).expect("plain json")
}

/// Continued fraction of `√d`; `max_steps = 0` uses the default cutoff.
#[wasm_bindgen]
pub fn cf(d: &str, max_steps: u32) -> Result<String, String> {
    let d = poly(d)?;
    let e = cf_expand(&d, steps(max_steps)).map_err(|e| e.to_string())?;
    let quotients: Vec<String> = (0..e.quotient_count())
        .map(|n| e.quotient(n).expect("in range").to_string())
        .collect();
    let abel = e.period.is_some() && abel_check(&e);
    Ok(to_string(json!({
        "schema": SCHEMA_VERSION,
        "d": d.to_string(),
        "quotients": quotients,
        "period": e.period,
        "truncated": e.truncated,
        "abel": abel,
    })))
}

/// Minimal Pell solution and the integrality verdict.
#[wasm_bindgen]
pub fn pell(d: &str, max_steps: u32) -> Result<String, String> {
    let d = poly(d)?;
    let cfg = RunConfig::default();
    let n = steps(max_steps);
    let verdict = is_pellian_over_z(&d, cfg.power_bound, n).map_err(|e| e.to_string())?;
    let kind = match &verdict {
        PellVerdict::Integral { .. } => "integral",
        PellVerdict::ProvenAbsent { .. } => "absent",
        PellVerdict::AbsentAtBound { .. } => "unknown",
        PellVerdict::NoPeriod { .. } => "no_period",
    };
    let pair = |s: &pellian::pell::PellSolution<Rational>| json!({"f": s.f.to_string(), "g": s.g.to_string()});
    let period = match verdict {
        PellVerdict::NoPeriod { .. } => None,
        _ => period_solution(&cf_expand(&d, n).map_err(|e| e.to_string())?),
    };
    Ok(to_string(json!({
        "schema": SCHEMA_VERSION,
        "d": d.to_string(),
        "verdict": kind,
        "minimal": verdict.minimal().map(pair),
        "integral": verdict.solution().map(pair),
        "period_solution": period.as_ref().map(pair),
    })))
}

/// The order-`m` family member at `(a, b)`, its integral shift and
/// canonical form.
#[wasm_bindgen]
pub fn family(m: u32, a: &str, b: &str) -> Result<String, String> {
    let fam = ParamFamily::get(m).map_err(|e| e.to_string())?;
    let a = a.parse::<Rational>().map_err(|e| e.to_string())?;
    let b = b.parse::<Rational>().map_err(|e| e.to_string())?;
    let d = family_quartic(fam, &a, &b).map_err(|e| e.to_string())?;
    let shifted = shift_filter(&d);
    let canonical = match &shifted {
        Some((_, p)) => Some(canonicalize(p).map_err(|e| e.to_string())?.poly.to_string()),
        None => None,
    };
    Ok(to_string(json!({
        "schema": SCHEMA_VERSION,
        "m": m,
        "quartic": d.to_string(),
        "shift": shifted.as_ref().map(|(c, _)| format!("{c}/4")),
        "integral": shifted.as_ref().map(|(_, p)| p.to_string()),
        "canonical": canonical,
    })))
}
