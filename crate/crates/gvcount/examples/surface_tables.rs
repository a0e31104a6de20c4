//! Compute the refined invariant table of each surface type and print it
//! as Markdown.
//!
//!     cargo run --example surface_tables -- [dmax]

use gvcount::invariants::{ngh_table, SurfaceType};
use gvcount::output::{table_output, Format};

fn main() {
    let dmax: i64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("dmax must be an integer"))
        .unwrap_or(6);
    for surface in SurfaceType::ALL {
        let table = ngh_table(surface, dmax).expect("extraction succeeds");
        println!("{}", table_output(&table, Format::Md));
    }
}
