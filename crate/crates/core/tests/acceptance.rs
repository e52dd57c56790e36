//! Prints one PASS/FAIL line per acceptance criterion and exits non-zero
//! if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::criteria::{self, Outcome};

fn properties() -> Outcome {
    let failed = common::run_all_properties();
    if failed.is_empty() {
        Ok(format!("8 suites x {} cases", common::CASES))
    } else {
        let names: Vec<String> = failed.into_iter().map(|(n, e)| format!("{n}: {e}")).collect();
        Err(names.join("; "))
    }
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("continued-fraction goldens", criteria::cf_goldens, Duration::from_secs(1)),
        ("pell goldens", criteria::pell_goldens, Duration::from_secs(1)),
        ("square-free search, all orders", criteria::squarefree_search, Duration::from_secs(600)),
        ("nonsquare-free classification", criteria::nonsquarefree, Duration::from_secs(5)),
        ("torsion and period consistency", criteria::period_torsion, Duration::from_secs(120)),
        ("property suites", properties, Duration::from_secs(600)),
        ("family table cross-validation", criteria::cross_validation, Duration::from_secs(120)),
        ("series and minimality oracles", criteria::oracles, Duration::from_secs(120)),
    ];
    let mut all = true;
    for (i, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let took = start.elapsed();
        let result = result.and_then(|s| {
            if took <= budget {
                Ok(s)
            } else {
                Err(format!("{s}; took {took:.2?}, budget {budget:?}"))
            }
        });
        match result {
            Ok(s) => println!("PASS {} {name} ({took:.2?}): {s}", i + 1),
            Err(e) => {
                all = false;
                println!("FAIL {} {name} ({took:.2?}): {e}", i + 1);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
