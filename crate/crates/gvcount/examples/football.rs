//! The local football: assemble the partition function from its three
//! reciprocal MacMahon factors, take the logarithm, verify the closed
//! form, and extract the (single) invariant.
//!
//!     cargo run --example football -- [q_order]

use gvcount::worked::{
    football_invariants, football_log_closed_form, football_partition,
};

fn main() {
    let q_order: i64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("q_order must be an integer"))
        .unwrap_or(4);
    let y_order = 2 * q_order + 4;

    let z = football_partition(q_order, y_order);
    let log_z = z.log().unwrap();
    let closed = football_log_closed_form(q_order, y_order).unwrap();
    for m in 1..=q_order {
        log_z
            .term(m)
            .agrees_with(closed.term(m), y_order)
            .unwrap_or_else(|e| panic!("log Z differs from the closed form at Q^{m}: {e}"));
    }
    println!("log Z matches sum_k (1/k) Q^k psi^(-1) psi_w through Q^{q_order}");

    let table = football_invariants(q_order).unwrap();
    println!("extracted invariants:");
    for (m, g, h, n) in table.iter() {
        println!("  n_({g},{h})({m}[C]) = {n}");
    }
}
