//! Run-time knobs shared by the search engines and the command line.

use serde::Serialize;

use crate::contfrac::{DEFAULT_MAX_STEPS, DEFAULT_MAX_STEPS_SYMBOLIC};
use crate::pell::DEFAULT_POWER_BOUND;

/// Default half-width of the integer window scanned for roots of `G_n`.
pub const DEFAULT_ROOT_WINDOW: i64 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    /// Partial quotients computed over ℚ before giving up on a period.
    pub max_steps: usize,
    /// The same cutoff for expansions over ℚ(a).
    pub symbolic_steps: usize,
    /// Largest power of the minimal solution tried for integrality.
    pub power_bound: u32,
    /// Worker threads for candidate evaluation.
    pub workers: usize,
    /// Integers `|a| ≤ root_window` are scanned in the nonsquare-free case.
    pub root_window: i64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_steps: DEFAULT_MAX_STEPS,
            symbolic_steps: DEFAULT_MAX_STEPS_SYMBOLIC,
            power_bound: DEFAULT_POWER_BOUND,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            root_window: DEFAULT_ROOT_WINDOW,
        }
    }
}
