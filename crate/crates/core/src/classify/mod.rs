//! The classification engines: the finite search over each torsion family
//! and the nonsquare-free classification, with normal forms under
//! `x ↦ ±x + c`.

mod canonical;
mod constraints;
mod nonsquarefree;
mod search;

use thiserror::Error;

use crate::arith::{ArithError, Rational};
use crate::contfrac::ContFracError;
use crate::curves::CurveError;
use crate::pell::PellError;

pub use canonical::{canonicalize, CanonicalQuartic};
pub use constraints::{
    b_free_combination, bound_a, bound_b, bound_b_values, build_constraints, first_failure, merge_boxes, satisfies,
    ABound, BBound, BFreeCombination, ConstraintItem, ConstraintSet, ValuationBox,
};
pub use nonsquarefree::{
    admissible_quadratics, classify_nonsquarefree, scan_roots, NonsquarefreeForm, NonsquarefreeReport, QuadraticCase,
    RootScan,
};
pub use search::{
    search_torsion, shift_attempts, shift_filter, AElimination, Candidate, CandidateStatus, Certificate,
    DegenerationOutcome, DegenerationSearch, SearchReport, ShiftFailure, Survivor, Witness,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    ContFrac(#[from] ContFracError),
    #[error(transparent)]
    Pell(#[from] PellError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("the symbolic expansion for m = {m} found no constant Q_n within {steps} steps")]
    SymbolicNoPeriod { m: u32, steps: usize },
    #[error("no b-free combination of the constraints for m = {0}")]
    NoCombination(u32),
    #[error("{0} is not of the form p(a)/q(a) with deg p > deg q and q(0) = 0")]
    NotDivisorShape(String),
    #[error("the constraints leave v_p(b) unbounded")]
    Unbounded,
    #[error("the constraints are undefined at a = {a}: {factor} vanishes")]
    Degenerate { a: Rational, factor: String },
    #[error("expected a monic polynomial with integer coefficients, got {0}")]
    NotMonicIntegral(String),
    #[error("root window {window} is below the growth bound {bound} for {quadratic}")]
    WindowTooSmall { window: i64, bound: i64, quadratic: String },
    #[error("worker pool: {0}")]
    Pool(String),
}
