//! Command-line front end: compute invariant tables, KKV rows and theta
//! coefficients, and run the verification suites.
//!
//! Exit codes: 0 on success, 1 on verification failure, 2 on usage errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gvcount::invariants::{kkv_table, ngh_table, SurfaceType};
use gvcount::lattice::{theta_from_cosets, LatticeTag};
use gvcount::output::{kkv_output, table_output, theta_output, theta_rows, Format};
use gvcount::verify::{run_suite, Suite};

#[derive(Parser)]
#[command(
    name = "gvcount",
    version,
    about = "Exact tables of involution-refined curve counts on local Abelian and Nikulin surfaces"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariants n_(g,h)(d; type) for all admissible d up to a bound.
    Table {
        /// Surface type: Aev, Aodd, NIev, NIodd, or NII.
        #[arg(long = "type")]
        surface: String,
        /// Largest degree d.
        #[arg(long)]
        dmax: i64,
        /// Output format: json, csv, or md.
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// KKV invariants n_h(d) of a local K3 surface for -1 <= d <= dmax.
    Kkv {
        #[arg(long, allow_hyphen_values = true)]
        dmax: i64,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Coefficients of a lattice theta series Theta_T(q^2, w).
    Theta {
        /// Lattice: K, Ksh, N, or Nsh.
        #[arg(long)]
        lattice: String,
        /// Largest q-exponent.
        #[arg(long)]
        order: i64,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Run a verification suite.
    Verify {
        /// Suite: identities, lattices, examples, appendix, or all.
        #[arg(long)]
        suite: String,
        /// Override the default q-order of the suite.
        #[arg(long)]
        order: Option<i64>,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_format(s: &str) -> Result<Format, ExitCode> {
    Format::parse(s).ok_or_else(|| usage_error(&format!("unknown format '{s}' (json, csv, md)")))
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("GV_SERIES_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n >= 1 => {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .ok();
            }
            _ => return usage_error("GV_SERIES_THREADS must be a positive integer"),
        }
    }

    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Table {
            surface,
            dmax,
            format,
        } => {
            let Some(surface) = SurfaceType::parse(&surface) else {
                return usage_error(&format!(
                    "unknown type '{surface}' (Aev, Aodd, NIev, NIodd, NII)"
                ));
            };
            if dmax < 0 {
                return usage_error("dmax must be non-negative");
            }
            let format = match parse_format(&format) {
                Ok(f) => f,
                Err(code) => return code,
            };
            let table = match ngh_table(surface, dmax) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            print!("{}", table_output(&table, format));
            ExitCode::SUCCESS
        }
        Cmd::Kkv { dmax, format } => {
            if dmax < -1 {
                return usage_error("dmax must be at least -1");
            }
            let format = match parse_format(&format) {
                Ok(f) => f,
                Err(code) => return code,
            };
            let table = match kkv_table(dmax) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            print!("{}", kkv_output(&table, format));
            ExitCode::SUCCESS
        }
        Cmd::Theta {
            lattice,
            order,
            format,
        } => {
            let Some(tag) = LatticeTag::parse(&lattice) else {
                return usage_error(&format!("unknown lattice '{lattice}' (K, Ksh, N, Nsh)"));
            };
            if order < 0 {
                return usage_error("order must be non-negative");
            }
            let format = match parse_format(&format) {
                Ok(f) => f,
                Err(code) => return code,
            };
            let series = match theta_from_cosets(&tag.cosets(), order) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let rows = match theta_rows(&series, order) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            print!("{}", theta_output(&rows, tag.as_str(), format));
            ExitCode::SUCCESS
        }
        Cmd::Verify { suite, order } => {
            let Some(suite) = Suite::parse(&suite) else {
                return usage_error(&format!(
                    "unknown suite '{suite}' (identities, lattices, examples, appendix, all)"
                ));
            };
            let reports = run_suite(suite, order);
            let mut all_ok = true;
            for report in &reports {
                println!("suite: {}", report.suite.as_str());
                for check in &report.checks {
                    match &check.outcome {
                        Ok(()) => println!("  [PASS] {}", check.name),
                        Err(detail) => {
                            all_ok = false;
                            println!("  [FAIL] {}: {detail}", check.name);
                        }
                    }
                }
            }
            let total: usize = reports.iter().map(|r| r.checks.len()).sum();
            let failed: usize = reports
                .iter()
                .map(|r| r.checks.iter().filter(|c| !c.passed()).count())
                .sum();
            println!("{} checks, {} failed", total, failed);
            if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
