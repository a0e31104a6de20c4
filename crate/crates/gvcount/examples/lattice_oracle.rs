//! Evaluate the four lattice theta series by the coset method and by
//! direct vector enumeration, and show that they agree.
//!
//!     cargo run --release --example lattice_oracle -- [order]

use gvcount::lattice::{theta_bruteforce, theta_from_cosets, LatticeTag};
use gvcount::laurent::HalfInt;

fn main() {
    let order: i64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("order must be an integer"))
        .unwrap_or(12);
    for tag in [LatticeTag::K, LatticeTag::KSh, LatticeTag::N, LatticeTag::NSh] {
        let cosets = tag.cosets();
        let coset_side = theta_from_cosets(&cosets, order).unwrap();
        let brute_side = theta_bruteforce(&cosets, order);
        match coset_side.agrees_with(&brute_side, HalfInt::int(order)) {
            Ok(()) => println!(
                "Theta_{:<4} {} glue classes: coset method = enumeration up to q^{order}",
                tag.as_str(),
                cosets.len()
            ),
            Err(e) => {
                println!("Theta_{}: MISMATCH {e}", tag.as_str());
                std::process::exit(1);
            }
        }
    }
}
