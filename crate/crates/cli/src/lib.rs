//! Command-line front end for the `carlitz-core` verification suites.
//!
//! Exit status: 0 when every non-skipped check passes, 1 when any fails, 2 for usage or
//! configuration errors (reported before any computation starts).

pub mod compute;
pub mod config;
pub mod output;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use carlitz_core::par::Exec;
use clap::{Parser, Subcommand};

pub use compute::Quantity;
pub use config::{CommonArgs, ConfigError, Format, RunConfig};
pub use output::SuiteRun;
pub use suites::REGISTRY;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "carlitz", version, about = "Verify Carlitz-module identities over difference fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run verification suites (all of them unless --suite is given).
    Verify {
        /// Suite names, repeated or comma-separated.
        #[arg(long = "suite", value_delimiter = ',')]
        suites: Vec<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Print a computed quantity.
    Compute {
        #[arg(value_enum)]
        what: Quantity,
        /// Largest index (τ-order for exp-coeffs and phi-inverse-s, t-coefficients for omega).
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// List the available suites.
    List {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Runs the selected suites, at most `jobs` at a time, in report order.
pub fn run_suites(cfg: &RunConfig) -> Vec<SuiteRun> {
    let exec = if cfg.jobs == Some(1) { Exec::Sequential } else { Exec::available() };
    let names = cfg.selected();
    let one = |name: &&'static str| {
        let entry = REGISTRY.iter().find(|e| e.name == *name).expect("validated suite name");
        SuiteRun::new(name, (entry.run)(cfg, exec))
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let mut pool = rayon::ThreadPoolBuilder::new();
        if let Some(j) = cfg.jobs {
            pool = pool.num_threads(j);
        }
        if let Ok(pool) = pool.build() {
            return pool.install(|| names.par_iter().map(one).collect());
        }
    }
    names.iter().map(one).collect()
}

fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn usage_error(e: impl std::fmt::Display) -> i32 {
    eprintln!("error: {e}");
    EXIT_USAGE
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match cli.command {
        Command::List { format } => match emit(&output::render_listing(format), None) {
            Ok(()) => EXIT_PASS,
            Err(e) => usage_error(e),
        },
        Command::Verify { suites, common } => {
            let cfg = match RunConfig::resolve(&common, &suites) {
                Ok(c) => c,
                Err(e) => return usage_error(e),
            };
            let mut runs = run_suites(&cfg);
            if !cfg.timings {
                output::strip_timings(&mut runs);
            }
            if let Err(e) = emit(&output::render(&cfg, &runs), cfg.out.as_deref()) {
                return usage_error(e);
            }
            if runs.iter().all(|r| r.passed) {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Command::Compute { what, n, common } => {
            let cfg = match RunConfig::resolve(&common, &[]) {
                Ok(c) => c,
                Err(e) => return usage_error(e),
            };
            let fmt = cfg.format.unwrap_or(Format::Text);
            match compute::compute(what, n, &cfg) {
                Ok(t) => match emit(&t.render(fmt), cfg.out.as_deref()) {
                    Ok(()) => EXIT_PASS,
                    Err(e) => usage_error(e),
                },
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_FAIL
                }
            }
        }
    }
}
