//! Fiber-class invariants of an elliptically fibered threefold with a
//! fiberwise involution, for a few values of the two Euler
//! characteristics that determine them.
//!
//!     cargo run --example elliptic_fiber

use gvcount::worked::{elliptic_fiber_invariants, EllipticFiberParams};

fn main() {
    for (e_c0, e_c1) in [(2, 6), (0, 0), (-2, -2), (1, 3), (-4, 10)] {
        let inv = elliptic_fiber_invariants(EllipticFiberParams { e_c0, e_c1 }, 8).unwrap();
        println!("e(C0) = {e_c0:>2}, e(C1) = {e_c1:>2}:");
        if inv.is_empty() {
            println!("  all invariants vanish");
        }
        for ((g, h), n) in &inv {
            println!("  n_({g},{h}) = {n}");
        }
    }
}
