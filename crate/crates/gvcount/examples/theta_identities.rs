//! Check every theta-function identity the tables rest on: triple
//! products, the quadratic identity, the shifted-lattice factorizations
//! and closed forms, and the two independent table pipelines.
//!
//!     cargo run --release --example theta_identities -- [order]

use gvcount::verify::{run_suite, Suite};

fn main() {
    let order: i64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("order must be an integer"))
        .unwrap_or(40);
    let mut failed = 0;
    for report in run_suite(Suite::Identities, Some(order)) {
        for check in &report.checks {
            match &check.outcome {
                Ok(()) => println!("[PASS] {}", check.name),
                Err(e) => {
                    failed += 1;
                    println!("[FAIL] {}: {e}", check.name);
                }
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
