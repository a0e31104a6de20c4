//! The odd-type tables computed twice: once through the theta/Jacobi-form
//! quotient and once through the closed infinite products.
//!
//!     cargo run --example product_formulas -- [dmax]

use gvcount::invariants::{ngh_table, product_side_table, OddType};

fn main() {
    let dmax: i64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("dmax must be an integer"))
        .unwrap_or(8);
    for which in [OddType::AOdd, OddType::NIOdd] {
        let surface = which.surface();
        let from_product = product_side_table(which, dmax).unwrap();
        let from_theta = ngh_table(surface, dmax).unwrap();
        assert!(
            from_product.same_entries(&from_theta),
            "{} pipelines disagree",
            surface.as_str()
        );
        println!(
            "{}: {} entries agree between the theta quotient and the infinite product (d <= {dmax})",
            surface.as_str(),
            from_theta.len()
        );
    }
}
