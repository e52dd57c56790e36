//! `pellian`: continued fractions, Pell equations and the classification
//! searches from the command line.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pellian::report::Format;
use pellian::RunConfig;

/// Exit status: success, or the theorems reproduced.
pub const EXIT_OK: u8 = 0;
/// Bad arguments or unparsable input.
pub const EXIT_USAGE: u8 = 1;
/// A step cutoff or power bound was hit before an answer.
pub const EXIT_INCONCLUSIVE: u8 = 2;
/// `verify-theorems` found a mismatch.
pub const EXIT_MISMATCH: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "pellian", version, about = "Polynomial Pell equations and Pellian quartics over Z[x]")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Partial quotients computed before giving up on a period.
    #[arg(long, global = true, env = "PELLIAN_MAX_STEPS", value_parser = clap::value_parser!(u64).range(1..))]
    max_steps: Option<u64>,
    /// Largest power of the minimal solution tried for integrality.
    #[arg(long, global = true, env = "PELLIAN_POWER_BOUND", value_parser = clap::value_parser!(u32).range(1..))]
    power_bound: Option<u32>,
    /// Worker threads for the searches.
    #[arg(long, global = true, env = "PELLIAN_WORKERS", value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
    /// Output format: text, json or tsv.
    #[arg(long, global = true, env = "PELLIAN_FORMAT", default_value = "text")]
    format: Format,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true, env = "PELLIAN_OUT")]
    out: Option<PathBuf>,
}

impl GlobalOpts {
    fn config(&self) -> RunConfig {
        let mut cfg = RunConfig::default();
        if let Some(n) = self.max_steps {
            cfg.max_steps = n as usize;
        }
        if let Some(n) = self.power_bound {
            cfg.power_bound = n;
        }
        if let Some(n) = self.workers {
            cfg.workers = n as usize;
        }
        cfg
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Continued fraction expansion of √d.
    Cf { poly: String },
    /// Minimal Pell solution of d and whether it has an integral power.
    Pell { poly: String },
    /// Jacobian of y² = d(x) with the point ∞₊ - ∞₋ and its order.
    Jacobian { poly: String },
    /// The quartic of the order-m family at (a, b).
    Family {
        m: u32,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Finite search over the order-m family; all orders when none is given.
    Search { orders: Vec<u32> },
    /// Pellian monic quartics over Z[x] with a repeated factor.
    ClassifyNonsquarefree,
    /// Runs every search and checks the expected classification.
    VerifyTheorems,
}

/// What a command produced: the report text and its exit status.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return ExitCode::from(code);
        }
    };
    let cfg = cli.opts.config();
    let fmt = cli.opts.format;
    let result = match &cli.command {
        Command::Cf { poly } => commands::cf(poly, &cfg, fmt),
        Command::Pell { poly } => commands::pell(poly, &cfg, fmt),
        Command::Jacobian { poly } => commands::jacobian(poly, &cfg, fmt),
        Command::Family { m, a, b } => commands::family(*m, a, b, fmt),
        Command::Search { orders } => commands::search(orders, &cfg, fmt),
        Command::ClassifyNonsquarefree => commands::classify_nonsquarefree(&cfg, fmt),
        Command::VerifyTheorems => commands::verify_theorems(&cfg, fmt),
    };
    let out = match result {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let mut text = out.text;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    let written = match &cli.opts.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    ExitCode::from(out.code)
}
