//! Polynomial Pell equations `f² - d·g² = constant`: the minimal solution
//! from convergents, the solution group, and integrality over ℤ[x].

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{Field, Rational};
use crate::contfrac::{cf_expand, convergents, CfExpansion, ContFracError};
use crate::poly::Poly;

/// Default largest power tried when looking for an integral solution.
pub const DEFAULT_POWER_BOUND: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PellError {
    #[error(transparent)]
    ContFrac(#[from] ContFracError),
    #[error("{0} has no Pell solution within the step cutoff")]
    NotPellian(String),
    #[error("expected a monic quadratic, got {0}")]
    NotQuadratic(String),
    #[error("power index must be at least 1")]
    ZeroPower,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution<F: Field> {
    pub f: Poly<F>,
    pub g: Poly<F>,
    pub constant: F,
    pub index: u32,
    pub d: Poly<F>,
}

impl<F: Field> PellSolution<F> {
    /// Builds a solution after checking `f² - d·g² = constant`.
    pub fn new(f: Poly<F>, g: Poly<F>, d: Poly<F>, index: u32) -> Option<Self> {
        let v = &(&f * &f) - &(&(&d * &g) * &g);
        if !v.is_constant() {
            return None;
        }
        let constant = v.coeff(0);
        Some(PellSolution {
            f,
            g,
            constant,
            index,
            d,
        })
    }

    /// Re-multiplies `f² - d·g²` and compares with the stored constant.
    pub fn verify(&self) -> bool {
        let v = &(&self.f * &self.f) - &(&(&self.d * &self.g) * &self.g);
        v == Poly::constant(self.constant.clone()) || (v.is_zero() && self.constant.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        self.constant.is_one() && !self.g.is_zero()
    }

    /// Identifies `(f, g)` with `(-f, -g)` by making `lead(f)` positive.
    fn normalized(mut self) -> Self {
        if self.f.lead().is_some_and(Field::is_negative) {
            self.f = -self.f;
            self.g = -self.g;
        }
        self
    }

    fn compose(&self, other: &Self) -> Self {
        let f = &(&self.f * &other.f) + &(&(&self.d * &self.g) * &other.g);
        let g = &(&self.f * &other.g) + &(&other.f * &self.g);
        PellSolution {
            f,
            g,
            constant: self.constant.clone() * other.constant.clone(),
            index: self.index + other.index,
            d: self.d.clone(),
        }
    }
}

impl<F: Field> Serialize for PellSolution<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PellSolution", 5)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("f", &self.f)?;
        st.serialize_field("g", &self.g)?;
        st.serialize_field("constant", &self.constant.to_string())?;
        st.serialize_field("index", &self.index)?;
        st.end()
    }
}

/// The first convergent whose norm is constant.
#[derive(Debug, Clone)]
pub struct QuasiPeriod<F: Field> {
    /// Index `k` of the convergent `p_k/q_k`.
    pub k: usize,
    /// `c = p_k² - d·q_k²`.
    pub constant: F,
}

/// Finds the first `n ≥ 1` with `Q_n` constant; then
/// `p_(n-1)² - d·q_(n-1)² = (-1)^n Q_n`.
pub fn quasi_period<F: Field>(cf: &CfExpansion<F>) -> Option<QuasiPeriod<F>> {
    let n = (1..cf.denominators.len()).find(|&n| cf.denominators[n].is_constant())?;
    let q = cf.denominators[n].coeff(0);
    let constant = if n % 2 == 0 { q } else { -q };
    Some(QuasiPeriod { k: n - 1, constant })
}

/// Leading coefficient and degree of the minimal solution's `f`, read off
/// the partial quotients without forming convergents:
/// `lead(p_k) = Π lead(a_i)` and `deg p_k = Σ deg a_i`.
#[derive(Debug, Clone)]
pub struct LeadData<F: Field> {
    pub lead: F,
    pub degree: usize,
    pub quasi: QuasiPeriod<F>,
    /// True when the constant was not a square and the solution doubled.
    pub doubled: bool,
}

pub fn minimal_lead<F: Field>(cf: &CfExpansion<F>) -> Option<LeadData<F>> {
    let quasi = quasi_period(cf)?;
    let mut lead = F::one();
    let mut degree = 0;
    for i in 0..=quasi.k {
        let a = cf.quotient(i)?;
        lead = lead * a.lead()?.clone();
        degree += a.degree()?;
    }
    let c = quasi.constant.clone();
    let (lead, degree, doubled) = match c.sqrt() {
        Some(r) => (lead.div(&r).ok()?, degree, false),
        // f = (p² + d q²)/c has leading coefficient 2·lead(p)²/c.
        None => (
            (F::from_i64(2) * lead.clone() * lead).div(&c).ok()?,
            2 * degree,
            true,
        ),
    };
    let lead = if lead.is_negative() { -lead } else { lead };
    Some(LeadData {
        lead,
        degree,
        quasi,
        doubled,
    })
}

/// The solution of least degree with constant 1, if the expansion of √d is
/// periodic within `max_steps`.
pub fn minimal_solution<F: Field>(d: &Poly<F>, max_steps: usize) -> Result<Option<PellSolution<F>>, PellError> {
    let cf = cf_expand(d, max_steps)?;
    Ok(minimal_solution_from(&cf))
}

pub fn minimal_solution_from<F: Field>(cf: &CfExpansion<F>) -> Option<PellSolution<F>> {
    let quasi = quasi_period(cf)?;
    let (p, q) = convergents(cf, quasi.k).ok()?;
    let c = quasi.constant;
    let d = cf.d.clone();
    let (f, g) = match c.sqrt() {
        Some(r) => {
            let ri = r.inv().ok()?;
            (p.scale(&ri), q.scale(&ri))
        }
        None => {
            let ci = c.inv().ok()?;
            let f = (&(&p * &p) + &(&(&d * &q) * &q)).scale(&ci);
            let g = (&p * &q).scale(&(F::from_i64(2) * ci));
            (f, g)
        }
    };
    let sol = PellSolution::new(f, g, d, 1)?.normalized();
    debug_assert!(sol.constant.is_one());
    Some(sol)
}

/// The solution from the convergent just before the end of the first
/// period, normalized to constant 1 and positive leading coefficient.
pub fn period_solution<F: Field>(cf: &CfExpansion<F>) -> Option<PellSolution<F>> {
    let per = cf.period?;
    let (p, q) = convergents(cf, per.start + per.length - 2).ok()?;
    let sol = PellSolution::new(p, q, cf.d.clone(), 1)?;
    let mut sol = if sol.constant.is_one() {
        sol
    } else {
        let r = sol.constant.sqrt()?.inv().ok()?;
        PellSolution::new(sol.f.scale(&r), sol.g.scale(&r), sol.d, 1)?
    };
    if let Some(min) = minimal_solution_from(cf) {
        sol.index = (sol.f.degree()? / min.f.degree()?) as u32;
    }
    Some(sol.normalized())
}

/// `(f_1 + g_1√d)^n` by binary exponentiation.
pub fn power_solution<F: Field>(s: &PellSolution<F>, n: u32) -> Result<PellSolution<F>, PellError> {
    if n == 0 {
        return Err(PellError::ZeroPower);
    }
    let mut acc: Option<PellSolution<F>> = None;
    let mut base = s.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => a.compose(&base),
            });
        }
        e >>= 1;
        if e > 0 {
            base = base.compose(&base);
        }
    }
    Ok(acc.expect("n >= 1"))
}

/// `G_0(a), …, G_(n_max)(a)` for the minimal solution of a monic quadratic,
/// from `G_(n+2) = 2F_1 G_(n+1) - G_n`.
pub fn g_sequence_at(d_quadratic: &Poly<Rational>, a: &Rational, n_max: usize) -> Result<Vec<Rational>, PellError> {
    if d_quadratic.degree() != Some(2) || !d_quadratic.is_monic() {
        return Err(PellError::NotQuadratic(d_quadratic.to_string()));
    }
    let s = minimal_solution(d_quadratic, crate::contfrac::DEFAULT_MAX_STEPS)?
        .ok_or_else(|| PellError::NotPellian(d_quadratic.to_string()))?;
    let two_f1 = Rational::from_int(2) * s.f.eval(a);
    let mut out = vec![Rational::zero(), s.g.eval(a)];
    while out.len() <= n_max {
        let k = out.len();
        out.push(&two_f1 * &out[k - 1] - &out[k - 2]);
    }
    out.truncate(n_max + 1);
    Ok(out)
}

/// Outcome of the integrality test over ℤ[x].
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PellVerdict {
    /// An integral solution, the least power of the minimal one that is.
    Integral { power: u32, solution: PellSolution<Rational>, minimal: PellSolution<Rational> },
    /// No power can be integral: the minimal solution's leading coefficient
    /// `c` is not an integer, and the n-th power has leading coefficient
    /// `2^(n-1) c^n`, which is then never an integer.
    ProvenAbsent { minimal: PellSolution<Rational> },
    /// Powers up to the bound were tried without success.
    AbsentAtBound { bound: u32, minimal: PellSolution<Rational> },
    /// The expansion found no period within the step cutoff.
    NoPeriod { steps: usize },
}

impl PellVerdict {
    pub fn solution(&self) -> Option<&PellSolution<Rational>> {
        match self {
            PellVerdict::Integral { solution, .. } => Some(solution),
            _ => None,
        }
    }

    pub fn minimal(&self) -> Option<&PellSolution<Rational>> {
        match self {
            PellVerdict::Integral { minimal, .. }
            | PellVerdict::ProvenAbsent { minimal }
            | PellVerdict::AbsentAtBound { minimal, .. } => Some(minimal),
            PellVerdict::NoPeriod { .. } => None,
        }
    }

    pub fn is_integral(&self) -> bool {
        matches!(self, PellVerdict::Integral { .. })
    }
}

/// Tests for a Pell solution with `f, g ∈ ℤ[x]`, trying powers of the
/// minimal solution up to `power_bound`.
pub fn is_pellian_over_z(d: &Poly<Rational>, power_bound: u32, max_steps: usize) -> Result<PellVerdict, PellError> {
    let Some(minimal) = minimal_solution(d, max_steps)? else {
        return Ok(PellVerdict::NoPeriod { steps: max_steps });
    };
    if !minimal.f.lead().expect("f is nonzero").is_integer() {
        return Ok(PellVerdict::ProvenAbsent { minimal });
    }
    for n in 1..=power_bound {
        let s = power_solution(&minimal, n)?;
        if s.f.is_integral() && s.g.is_integral() {
            return Ok(PellVerdict::Integral {
                power: n,
                solution: s,
                minimal,
            });
        }
    }
    Ok(PellVerdict::AbsentAtBound {
        bound: power_bound,
        minimal,
    })
}
