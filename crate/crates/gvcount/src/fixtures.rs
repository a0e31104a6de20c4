//! Reference values shipped with the crate.
//!
//! `data/aodd_reference.csv` holds every nonzero `n_{g,h}(d; Aodd)` with
//! `d <= 7`, in `d,g,h,n` columns. The verification suite recomputes the
//! table from scratch and demands an exact match, including the absence
//! of entries outside the listed cells.

use num_bigint::BigInt;

use crate::invariants::{InvariantTable, SurfaceType};

const AODD_REFERENCE: &str = include_str!("../data/aodd_reference.csv");

/// The reference table for type `Aodd`, `d <= 7`.
pub fn aodd_reference() -> InvariantTable {
    let mut table = InvariantTable::new(SurfaceType::AOdd);
    for line in AODD_REFERENCE.lines().skip(1) {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut cols = line.split(',');
        let d: i64 = cols.next().unwrap().parse().unwrap();
        let g: i64 = cols.next().unwrap().parse().unwrap();
        let h: i64 = cols.next().unwrap().parse().unwrap();
        let n: BigInt = cols.next().unwrap().parse().unwrap();
        table.insert(d, g, h, n);
    }
    table
}

/// The largest degree covered by the reference table.
pub const AODD_REFERENCE_DMAX: i64 = 7;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_loads() {
        let t = aodd_reference();
        assert_eq!(t.len(), 52);
        assert_eq!(t.get(0, 1, 0), Some(&BigInt::from(-4)));
        assert_eq!(t.get(7, 8, 3), Some(&BigInt::from(64)));
        assert_eq!(t.get(7, 8, 2), Some(&BigInt::from(-48)));
        // per-degree maxima: the highest genus at degree d is d + 1
        for (d, g, _, _) in t.iter() {
            assert!(g <= d + 1);
        }
    }
}
