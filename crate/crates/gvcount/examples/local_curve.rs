//! The rigid local curve: for each genus pair the degree-one partition
//! function coefficient is computed from the moduli enumeration (subset
//! sums against symmetric-power Euler characteristics) and compared with
//! its psi-monomial closed form.
//!
//!     cargo run --example local_curve

use gvcount::worked::{local_curve_sides, LocalCurveParams};

fn main() {
    let y_order = 12;
    for g in 0..=8 {
        for h in 0..=((g + 1) / 2) {
            let p = LocalCurveParams::new(g, h);
            let (computed, expected) = local_curve_sides(p, y_order).unwrap();
            match computed.agrees_with(&expected, y_order) {
                Ok(()) => println!(
                    "(g, h) = ({g}, {h}), {} fixed points: moduli sum = psi_y^{} psi_w^{}",
                    2 * p.fixed_half_count(),
                    h - 1,
                    p.fixed_half_count(),
                ),
                Err(e) => {
                    println!("(g, h) = ({g}, {h}): MISMATCH {e}");
                    std::process::exit(1);
                }
            }
        }
    }
}
