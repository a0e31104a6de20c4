//! The h = 0 slice of the odd Abelian table assembles into a single
//! two-variable series with a closed infinite-product form; print both
//! sides coefficient by coefficient.
//!
//!     cargo run --example hyperelliptic -- [dmax]

use gvcount::invariants::hyperelliptic_series;
use gvcount::laurent::HalfInt;

fn main() {
    let dmax: i64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("dmax must be an integer"))
        .unwrap_or(6);
    let (from_table, from_product) = hyperelliptic_series(dmax).unwrap();
    for d in 0..=dmax {
        let a = from_table.coeff_int(d).unwrap();
        let b = from_product.coeff_int(d).unwrap();
        let status = if a == b { "=" } else { "DIFFERS FROM" };
        println!("[q^{d}] table side      : {a}");
        println!("      {status} product side: {b}");
    }
    from_table
        .agrees_with(&from_product, HalfInt::int(dmax))
        .expect("the two sides agree");
}
