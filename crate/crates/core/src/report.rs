//! Machine-readable emission: JSON records for Hilbert/generator data and
//! the Markdown/CSV/JSON forms of the determinant bounds table.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::apolarity::{GeneratorReport, HilbertFunction, Mode};
use crate::bounds::TableRow;
use crate::invariants::InvariantKind;

/// The JSON record for one Hilbert-function computation, optionally carrying
/// minimal-generator counts.
#[derive(Debug, Clone, Serialize)]
pub struct HilbertRecord {
    pub invariant: String,
    pub n: usize,
    pub hilbert: Vec<usize>,
    pub length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<BTreeMap<String, usize>>,
    pub mode: String,
}

impl HilbertRecord {
    pub fn new(
        kind: InvariantKind,
        n: usize,
        h: &HilbertFunction,
        gens: Option<&GeneratorReport>,
        mode: Mode,
    ) -> Self {
        HilbertRecord {
            invariant: kind.cli_name().to_string(),
            n,
            hilbert: h.values.clone(),
            length: h.length,
            mu: gens.map(|g| {
                g.mu.iter().map(|&(k, c)| (k.to_string(), c)).collect()
            }),
            mode: mode.label().to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    /// CSV row `invariant,n,length,h_0 h_1 ...`.
    pub fn to_csv_row(&self) -> String {
        let hs: Vec<String> = self.hilbert.iter().map(|v| v.to_string()).collect();
        format!("{},{},{},{}", self.invariant, self.n, self.length, hs.join(" "))
    }
}

pub const TABLE_CSV_HEADER: &str = "n,rs_lower,lt_lower,l_diff";

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(TABLE_CSV_HEADER);
    for r in rows {
        out.push_str(&format!("\n{},{},{},{}", r.n, r.rs_lower, r.lt_lower, r.l_diff));
    }
    out.push('\n');
    out
}

pub fn table_markdown(rows: &[TableRow]) -> String {
    let mut out = String::from("| n | rs_lower | lt_lower | l_diff |\n|---|---|---|---|\n");
    for r in rows {
        out.push_str(&format!("| {} | {} | {} | {} |\n", r.n, r.rs_lower, r.lt_lower, r.l_diff));
    }
    out
}

pub fn table_json(rows: &[TableRow]) -> String {
    serde_json::to_string(rows).expect("rows serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apolarity::{hilbert_function, minimal_generator_degrees, Limits};
    use crate::invariants::build_invariant;

    #[test]
    fn hilbert_record_json_shape() {
        let l = Limits::default();
        let f = build_invariant(InvariantKind::Determinant, 2).unwrap();
        let h = hilbert_function(&f, Mode::Rational, &l).unwrap();
        let g = minimal_generator_degrees(&f, 3, &l).unwrap();
        let rec = HilbertRecord::new(InvariantKind::Determinant, 2, &h, Some(&g), Mode::Rational);
        let json = rec.to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["invariant"], "det");
        assert_eq!(v["hilbert"], serde_json::json!([1, 4, 1]));
        assert_eq!(v["length"], 6);
        assert_eq!(v["mu"]["2"], 9);
        assert_eq!(v["mode"], "rational");
    }

    #[test]
    fn table_formats() {
        let rows = vec![
            TableRow { n: 2, rs_lower: 3, lt_lower: 4, l_diff: 4 },
            TableRow { n: 3, rs_lower: 10, lt_lower: 14, l_diff: 9 },
        ];
        let csv = table_csv(&rows);
        assert!(csv.starts_with("n,rs_lower,lt_lower,l_diff\n2,3,4,4\n3,10,14,9"));
        assert!(table_markdown(&rows).contains("| 3 | 10 | 14 | 9 |"));
        let v: serde_json::Value = serde_json::from_str(&table_json(&rows)).unwrap();
        assert_eq!(v[1]["rs_lower"], 10);
    }
}
