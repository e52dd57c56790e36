//! Continued fractions of √d(x) over a field, via the exact quadratic-surd
//! recursion on complete quotients `(P + √d)/Q`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{Field, Rational};
use crate::poly::{principal_sqrt, Poly, PolyError};

/// Step cutoff for expansions over ℚ.
pub const DEFAULT_MAX_STEPS: usize = 64;
/// Step cutoff for expansions over ℚ(a).
pub const DEFAULT_MAX_STEPS_SYMBOLIC: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContFracError {
    #[error("{0} is a perfect square")]
    PerfectSquare(String),
    #[error("surd invariant violated at step {step}: Q does not divide d - P^2")]
    Invariant { step: usize },
    #[error("convergent {index} requested but only {available} partial quotients are known")]
    IndexOutOfRange { index: usize, available: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The complete quotient `(P + √d)/Q`.
#[derive(Clone, Debug)]
pub struct Surd<F> {
    p: Poly<F>,
    q: Poly<F>,
    d: Arc<Poly<F>>,
}

impl<F: Field> Surd<F> {
    /// Checks `Q ≠ 0` and `Q | d - P²`.
    pub fn new(p: Poly<F>, q: Poly<F>, d: Arc<Poly<F>>) -> Option<Self> {
        if q.is_zero() {
            return None;
        }
        let (_, r) = (d.as_ref() - &(&p * &p)).div_rem(&q).ok()?;
        r.is_zero().then_some(Surd { p, q, d })
    }

    pub fn p(&self) -> &Poly<F> {
        &self.p
    }

    pub fn q(&self) -> &Poly<F> {
        &self.q
    }

    pub fn radicand(&self) -> &Poly<F> {
        &self.d
    }

    /// `⌊(P + √d)/Q⌋`, given `a0 = ⌊√d⌋`.
    pub fn floor(&self, a0: &Poly<F>) -> Poly<F> {
        (&self.p + a0).div_rem(&self.q).expect("Q is nonzero").0
    }

    /// The next complete quotient `1/(α - a)`.
    fn next(&self, a: &Poly<F>) -> Option<Self> {
        let p = &(a * &self.q) - &self.p;
        let q = (self.d.as_ref() - &(&p * &p)).exact_div(&self.q).ok()?;
        (!q.is_zero()).then(|| Surd {
            p,
            q,
            d: Arc::clone(&self.d),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Period {
    pub start: usize,
    pub length: usize,
}

/// What happens to the symbolic expansion on a locus of the parameter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SideConditionKind {
    /// A coefficient of `a_n` or `Q_n` has a pole.
    Pole,
    /// The leading coefficient of the partial quotient `a_n` vanishes.
    QuotientLeadVanishes,
    /// The leading coefficient of `Q_n` vanishes.
    DenominatorLeadVanishes,
    /// A constant `Q_n` equals 1, which shortens the period.
    PeriodCollapse,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideCondition {
    pub kind: SideConditionKind,
    pub index: usize,
    /// Polynomial in the parameter `a` whose roots form the locus.
    #[serde(serialize_with = "serialize_in_a")]
    pub locus: Poly<Rational>,
    pub rational_roots: Vec<Rational>,
}

fn serialize_in_a<S: Serializer>(p: &Poly<Rational>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&p.display_with("a"))
}

#[derive(Debug, Clone, Serialize)]
pub struct CfExpansion<F: Field> {
    pub d: Poly<F>,
    pub a0: Poly<F>,
    /// `a_1, a_2, …` in order.
    pub partial_quotients: Vec<Poly<F>>,
    pub period: Option<Period>,
    pub truncated: bool,
    pub side_conditions: Vec<SideCondition>,
    /// `Q_0, Q_1, …` of the complete quotients.
    #[serde(skip)]
    pub denominators: Vec<Poly<F>>,
}

impl<F: Field> CfExpansion<F> {
    /// `a_n` with `a_0` at index 0.
    pub fn quotient(&self, n: usize) -> Option<&Poly<F>> {
        if n == 0 {
            Some(&self.a0)
        } else {
            self.partial_quotients.get(n - 1)
        }
    }

    pub fn quotient_count(&self) -> usize {
        self.partial_quotients.len() + 1
    }

    /// The quotients of one full period.
    pub fn period_quotients(&self) -> Option<&[Poly<F>]> {
        let p = self.period?;
        Some(&self.partial_quotients[p.start - 1..p.start - 1 + p.length])
    }
}

fn record_loci<F: Field>(
    out: &mut Vec<SideCondition>,
    index: usize,
    poly: &Poly<F>,
    lead_kind: SideConditionKind,
) {
    let mut push = |kind: SideConditionKind, locus: Poly<Rational>| {
        let locus = locus.monic();
        if out.iter().any(|s| s.kind == kind && s.locus == locus) {
            return;
        }
        let rational_roots = locus.rational_roots();
        out.push(SideCondition {
            kind,
            index,
            locus,
            rational_roots,
        });
    };
    for c in poly.coeffs() {
        if let Some(den) = c.pole_locus() {
            push(SideConditionKind::Pole, den);
        }
    }
    if let Some(v) = poly.lead().and_then(Field::vanishing_locus) {
        push(lead_kind, v);
    }
}

/// Expands √d until the first repeated surd state or `max_steps` partial
/// quotients beyond `a_0`.
pub fn cf_expand<F: Field>(d: &Poly<F>, max_steps: usize) -> Result<CfExpansion<F>, ContFracError> {
    let a0 = principal_sqrt(d)?;
    if &(&a0 * &a0) == d {
        return Err(ContFracError::PerfectSquare(d.to_string()));
    }
    let shared = Arc::new(d.clone());
    let mut state = Surd::new(Poly::zero(), Poly::one(), Arc::clone(&shared)).expect("Q = 1");
    let mut seen: HashMap<(Poly<F>, Poly<F>), usize> = HashMap::new();
    seen.insert((state.p.clone(), state.q.clone()), 0);
    let mut quotients = Vec::new();
    let mut denominators = vec![state.q.clone()];
    let mut side = Vec::new();
    let mut period = None;
    for n in 0..=max_steps {
        let a = if n == 0 { a0.clone() } else { state.floor(&a0) };
        if n > 0 {
            record_loci(&mut side, n, &a, SideConditionKind::QuotientLeadVanishes);
            quotients.push(a.clone());
        }
        if n == max_steps {
            break;
        }
        state = state.next(&a).ok_or(ContFracError::Invariant { step: n + 1 })?;
        record_loci(&mut side, n + 1, &state.q, SideConditionKind::DenominatorLeadVanishes);
        if state.q.is_constant() && !state.q.is_one() {
            if let Some(v) = (state.q.coeff(0) - F::one()).vanishing_locus() {
                let locus = v.monic();
                let rational_roots = locus.rational_roots();
                side.push(SideCondition {
                    kind: SideConditionKind::PeriodCollapse,
                    index: n + 1,
                    locus,
                    rational_roots,
                });
            }
        }
        denominators.push(state.q.clone());
        let key = (state.p.clone(), state.q.clone());
        if let Some(&start) = seen.get(&key) {
            period = Some(Period {
                start,
                length: n + 1 - start,
            });
            break;
        }
        seen.insert(key, n + 1);
    }
    Ok(CfExpansion {
        d: d.clone(),
        a0,
        partial_quotients: quotients,
        truncated: period.is_none(),
        period,
        side_conditions: side,
        denominators,
    })
}

/// `(p_n, q_n)` with `p_0/q_0 = a_0/1`, by the three-term recurrences.
pub fn convergents<F: Field>(cf: &CfExpansion<F>, n: usize) -> Result<(Poly<F>, Poly<F>), ContFracError> {
    if n >= cf.quotient_count() {
        return Err(ContFracError::IndexOutOfRange {
            index: n,
            available: cf.quotient_count(),
        });
    }
    let (mut p_prev, mut p) = (Poly::one(), cf.a0.clone());
    let (mut q_prev, mut q) = (Poly::zero(), Poly::one());
    for a in &cf.partial_quotients[..n] {
        let p_next = &(a * &p) + &p_prev;
        let q_next = &(a * &q) + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    Ok((p, q))
}

/// Abel's criterion on a detected period: the last quotient is `2a_0` and
/// the ones before it read the same in both directions.
pub fn abel_check<F: Field>(cf: &CfExpansion<F>) -> bool {
    let Some(per) = cf.period_quotients() else {
        return false;
    };
    let (last, interior) = per.split_last().expect("period is nonempty");
    let two_a0 = cf.a0.scale(&F::from_i64(2));
    last == &two_a0 && interior.iter().eq(interior.iter().rev())
}
