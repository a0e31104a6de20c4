//! Deterministic machine-readable output: JSON, CSV, and Markdown views
//! of the invariant tables, the KKV rows, and theta coefficients.
//!
//! Values are serialized as decimal strings so that arbitrarily large
//! integers survive a JSON round trip byte-for-byte.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::invariants::{InvariantTable, KkvTable, SurfaceType};
use crate::qseries::QSeries;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OutputEntry {
    pub d: i64,
    pub g: i64,
    pub h: i64,
    pub n: String,
}

/// Serialized form of an [`InvariantTable`]: entries sorted by
/// `(d, g, h)`, nonzero values only.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: String,
    #[serde(rename = "type")]
    pub surface: String,
    pub entries: Vec<OutputEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped_d: Vec<i64>,
}

impl OutputRecord {
    pub fn from_table(table: &InvariantTable) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION.to_string(),
            surface: table.surface.as_str().to_string(),
            entries: table
                .iter()
                .map(|(d, g, h, n)| OutputEntry {
                    d,
                    g,
                    h,
                    n: n.to_string(),
                })
                .collect(),
            skipped_d: table.skipped_d().to_vec(),
        }
    }

    pub fn to_table(&self) -> Option<InvariantTable> {
        let surface = SurfaceType::parse(&self.surface)?;
        let mut t = InvariantTable::new(surface);
        for e in &self.entries {
            t.insert(e.d, e.g, e.h, e.n.parse().ok()?);
        }
        for &d in &self.skipped_d {
            t.mark_skipped(d);
        }
        Some(t)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable record");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Option<Self> {
        serde_json::from_str(s).ok()
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Format {
    Json,
    Csv,
    Md,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "json" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            "md" => Some(Format::Md),
            _ => None,
        }
    }
}

pub fn table_output(table: &InvariantTable, format: Format) -> String {
    match format {
        Format::Json => OutputRecord::from_table(table).to_json(),
        Format::Csv => table_csv(table),
        Format::Md => table_markdown(table),
    }
}

fn table_csv(table: &InvariantTable) -> String {
    let mut out = String::from("d,g,h,n\n");
    for (d, g, h, n) in table.iter() {
        out.push_str(&format!("{d},{g},{h},{n}\n"));
    }
    out
}

/// One block per degree, genera as rows and quotient genera as columns,
/// mirroring the layout of the reference table.
fn table_markdown(table: &InvariantTable) -> String {
    let mut out = format!("# n_(g,h)(d; {})\n", table.surface.as_str());
    if !table.skipped_d().is_empty() {
        let list: Vec<String> = table.skipped_d().iter().map(|d| d.to_string()).collect();
        out.push_str(&format!("\nskipped d (inadmissible): {}\n", list.join(", ")));
    }
    let degrees: BTreeSet<i64> = table.iter().map(|(d, _, _, _)| d).collect();
    for d in degrees {
        let slice = table.slice_d(d);
        let gs: BTreeSet<i64> = slice.keys().map(|&(g, _)| g).collect();
        let hs: BTreeSet<i64> = slice.keys().map(|&(_, h)| h).collect();
        out.push_str(&format!("\n## d = {d}\n\n"));
        out.push_str("| g \\ h |");
        for h in &hs {
            out.push_str(&format!(" {h} |"));
        }
        out.push('\n');
        out.push_str("|---|");
        for _ in &hs {
            out.push_str("---|");
        }
        out.push('\n');
        for g in &gs {
            out.push_str(&format!("| {g} |"));
            for h in &hs {
                match slice.get(&(*g, *h)) {
                    Some(n) => out.push_str(&format!(" {n} |")),
                    None => out.push_str("  |"),
                }
            }
            out.push('\n');
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct KkvEntry {
    pub d: i64,
    pub h: i64,
    pub n: String,
}

pub fn kkv_output(table: &KkvTable, format: Format) -> String {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Record {
                schema_version: &'static str,
                entries: Vec<KkvEntry>,
            }
            let rec = Record {
                schema_version: SCHEMA_VERSION,
                entries: table
                    .iter()
                    .map(|(d, h, n)| KkvEntry {
                        d,
                        h,
                        n: n.to_string(),
                    })
                    .collect(),
            };
            let mut s = serde_json::to_string_pretty(&rec).expect("serializable record");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::from("d,h,n\n");
            for (d, h, n) in table.iter() {
                out.push_str(&format!("{d},{h},{n}\n"));
            }
            out
        }
        Format::Md => {
            let mut out = String::from("| d | h | n |\n|---|---|---|\n");
            for (d, h, n) in table.iter() {
                out.push_str(&format!("| {d} | {h} | {n} |\n"));
            }
            out
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ThetaEntry {
    pub q: i64,
    pub w: i64,
    pub c: String,
}

/// Rows `(q-exponent, w-exponent, coefficient)` of a theta series with
/// integral exponents; half-integer exponents are refused.
pub fn theta_rows(series: &QSeries<BigInt>, order: i64) -> Result<Vec<ThetaEntry>> {
    let mut rows = Vec::new();
    for q in 0..=order {
        let Some(c) = series.coeff_int(q) else { break };
        for (y, w, v) in c.integer_terms()? {
            debug_assert_eq!(y, 0, "theta coefficients are w-polynomials");
            rows.push(ThetaEntry {
                q,
                w,
                c: v.to_string(),
            });
        }
    }
    Ok(rows)
}

pub fn theta_output(rows: &[ThetaEntry], lattice: &str, format: Format) -> String {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Record<'a> {
                schema_version: &'static str,
                lattice: &'a str,
                entries: &'a [ThetaEntry],
            }
            let rec = Record {
                schema_version: SCHEMA_VERSION,
                lattice,
                entries: rows,
            };
            let mut s = serde_json::to_string_pretty(&rec).expect("serializable record");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::from("q,w,c\n");
            for r in rows {
                out.push_str(&format!("{},{},{}\n", r.q, r.w, r.c));
            }
            out
        }
        Format::Md => {
            let mut out = String::from("| q | w | c |\n|---|---|---|\n");
            for r in rows {
                out.push_str(&format!("| {} | {} | {} |\n", r.q, r.w, r.c));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::ngh_table;

    #[test]
    fn json_round_trip() {
        let t = ngh_table(SurfaceType::AOdd, 3).unwrap();
        let rec = OutputRecord::from_table(&t);
        let json = rec.to_json();
        let back = OutputRecord::from_json(&json).unwrap();
        assert_eq!(back, rec);
        let t2 = back.to_table().unwrap();
        assert!(t.same_entries(&t2));
        assert_eq!(t.skipped_d(), t2.skipped_d());
    }

    #[test]
    fn csv_rows_in_order() {
        let t = ngh_table(SurfaceType::AOdd, 1).unwrap();
        let csv = table_output(&t, Format::Csv);
        assert_eq!(csv, "d,g,h,n\n0,1,0,-4\n1,2,0,-16\n");
    }

    #[test]
    fn deterministic_output() {
        let t = ngh_table(SurfaceType::AOdd, 4).unwrap();
        for fmt in [Format::Json, Format::Csv, Format::Md] {
            assert_eq!(table_output(&t, fmt), table_output(&t, fmt));
        }
    }

    #[test]
    fn theta_rows_match_window() {
        let s = crate::lattice::theta_from_cosets(&crate::lattice::nikulin_shifted_cosets(), 1)
            .unwrap();
        let rows = theta_rows(&s, 1).unwrap();
        let as_tuples: Vec<(i64, i64, String)> =
            rows.iter().map(|r| (r.q, r.w, r.c.clone())).collect();
        assert_eq!(
            as_tuples,
            vec![
                (1, -1, "1".into()),
                (1, 0, "2".into()),
                (1, 1, "1".into())
            ]
        );
    }
}
