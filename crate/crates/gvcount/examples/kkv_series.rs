//! KKV invariants n_h(d) of a local K3 surface, extracted from the
//! inverse of the weight-10 Jacobi cusp form.
//!
//!     cargo run --example kkv_series -- [dmax]

use gvcount::invariants::kkv_table;

fn main() {
    let dmax: i64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("dmax must be an integer"))
        .unwrap_or(8);
    let table = kkv_table(dmax).unwrap();
    let mut last_d = i64::MIN;
    for (d, h, n) in table.iter() {
        if d != last_d {
            println!("d = {d}:");
            last_d = d;
        }
        println!("  n_{h} = {n}");
    }
}
