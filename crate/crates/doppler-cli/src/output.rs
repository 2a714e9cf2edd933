//! Table rendering: CSV with fixed 17-significant-digit fields, or JSON.

use std::io::{self, Write};

use serde::Serialize;

/// Column-major header with row-major values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv<W: Write>(w: W, table: &Table) -> io::Result<()> {
    let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    out.write_record(&table.columns)?;
    for row in &table.rows {
        out.write_record(row.iter().map(|&x| format_value(x)))?;
    }
    out.flush()
}

#[derive(Serialize)]
struct JsonDoc<'a> {
    columns: &'a [String],
    rows: &'a [Vec<f64>],
    warnings: &'a [String],
}

/// Non-finite values become `null`.
pub fn write_json<W: Write>(mut w: W, table: &Table, warnings: &[String]) -> io::Result<()> {
    let doc = JsonDoc { columns: &table.columns, rows: &table.rows, warnings };
    serde_json::to_writer_pretty(&mut w, &doc)?;
    w.write_all(b"\n")?;
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_is_fixed_width_scientific() {
        let t = Table { columns: vec!["t_s".into(), "x".into()], rows: vec![vec![0.0, 1.0 / 3.0]] };
        let mut buf = Vec::new();
        write_csv(&mut buf, &t).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s, "t_s,x\n0.0000000000000000e0,3.3333333333333331e-1\n");
    }

    #[test]
    fn json_nan_is_null() {
        let t = Table { columns: vec!["t_s".into()], rows: vec![vec![f64::NAN]] };
        let mut buf = Vec::new();
        write_json(&mut buf, &t, &["w".into()]).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert!(v["rows"][0][0].is_null());
        assert_eq!(v["warnings"][0], "w");
    }
}
