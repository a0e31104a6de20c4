//! Recompute the odd Abelian table through degree 7 and diff it against
//! the reference values shipped with the crate.
//!
//!     cargo run --example reference_table

use gvcount::fixtures::{aodd_reference, AODD_REFERENCE_DMAX};
use gvcount::invariants::{ngh_table, SurfaceType};

fn main() {
    let computed = ngh_table(SurfaceType::AOdd, AODD_REFERENCE_DMAX).unwrap();
    let reference = aodd_reference();

    println!("   d   g   h  computed    reference");
    let mut mismatches = 0;
    for (d, g, h, n) in computed.iter() {
        let r = reference.get(d, g, h);
        let marker = if r == Some(n) { " " } else { "!" };
        if r != Some(n) {
            mismatches += 1;
        }
        println!(
            "{marker}{d:>4}{g:>4}{h:>4}  {n:>9}    {}",
            r.map(|v| v.to_string()).unwrap_or_else(|| "-".into())
        );
    }
    for (d, g, h, n) in reference.iter() {
        if computed.get(d, g, h).is_none() {
            println!("!{d:>4}{g:>4}{h:>4}  {:>9}    {n}", "-");
            mismatches += 1;
        }
    }
    if mismatches == 0 {
        println!("\nall {} entries match", computed.len());
    } else {
        println!("\n{mismatches} mismatches");
        std::process::exit(1);
    }
}
