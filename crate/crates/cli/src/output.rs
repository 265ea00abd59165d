//! Plot-ready artifacts and their CSV / JSON encodings.
//!
//! Numbers are written with 12 significant digits (`{:.11e}`) in CSV; JSON
//! uses the shortest round-trip representation. Non-finite values appear as
//! `inf`/`NaN` in CSV and `null` in JSON.

use crate::config::Format;
use crate::error::CliResult;
use serde_json::{json, Value};
use std::io::Write;

pub fn fmt_num(v: f64) -> String {
    format!("{v:.11e}")
}

/// Column-oriented series, one row per sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// Dense grey-scale matrix with a leading axis row and column.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMap {
    /// Label of the top-left cell, e.g. `t[1/hop]\n`.
    pub corner: String,
    pub row_axis: Vec<f64>,
    pub col_axis: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

/// Ordered `quantity,value` pairs.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub entries: Vec<(String, Value)>,
}

impl Report {
    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.entries.push((key.to_string(), value.into()));
    }

    pub fn number(&mut self, key: &str, v: f64) {
        self.push(key, if v.is_finite() { json!(v) } else { Value::Null });
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Artifact {
    Table(Table),
    Map(DenseMap),
    Report(Report),
}

fn json_num(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

fn json_row(r: &[f64]) -> Value {
    Value::Array(r.iter().map(|&v| json_num(v)).collect())
}

impl Artifact {
    pub fn write<W: Write>(&self, format: Format, out: W) -> CliResult<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_csv<W: Write>(&self, out: W) -> CliResult<()> {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
        match self {
            Artifact::Table(t) => {
                w.write_record(&t.columns)?;
                for r in &t.rows {
                    w.write_record(r.iter().map(|&v| fmt_num(v)))?;
                }
            }
            Artifact::Map(m) => {
                let head =
                    std::iter::once(m.corner.clone()).chain(m.col_axis.iter().map(|&v| fmt_num(v)));
                w.write_record(head)?;
                for (a, r) in m.row_axis.iter().zip(&m.values) {
                    w.write_record(
                        std::iter::once(fmt_num(*a)).chain(r.iter().map(|&v| fmt_num(v))),
                    )?;
                }
            }
            Artifact::Report(rep) => {
                w.write_record(["quantity", "value"])?;
                for (k, v) in &rep.entries {
                    let cell = match v {
                        Value::Null => String::new(),
                        Value::Number(n) if n.is_f64() => fmt_num(n.as_f64().unwrap_or(f64::NAN)),
                        Value::Number(n) => n.to_string(),
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    w.write_record([k.as_str(), cell.as_str()])?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }

    fn to_json(&self) -> Value {
        match self {
            Artifact::Table(t) => json!({
                "columns": t.columns,
                "rows": t.rows.iter().map(|r| json_row(r)).collect::<Vec<_>>(),
            }),
            Artifact::Map(m) => json!({
                "corner": m.corner,
                "row_axis": json_row(&m.row_axis),
                "col_axis": json_row(&m.col_axis),
                "values": m.values.iter().map(|r| json_row(r)).collect::<Vec<_>>(),
            }),
            Artifact::Report(rep) => {
                let mut map = serde_json::Map::new();
                for (k, v) in &rep.entries {
                    map.insert(k.clone(), v.clone());
                }
                Value::Object(map)
            }
        }
    }

    fn write_json<W: Write>(&self, mut out: W) -> CliResult<()> {
        serde_json::to_writer_pretty(&mut out, &self.to_json())
            .map_err(|e| crate::error::CliError::Io(e.to_string()))?;
        writeln!(out)?;
        Ok(())
    }

    pub fn to_bytes(&self, format: Format) -> CliResult<Vec<u8>> {
        let mut buf = Vec::new();
        self.write(format, &mut buf)?;
        Ok(buf)
    }
}

/// Parses a CSV table written by [`Artifact::write`].
pub fn parse_table(text: &str) -> CliResult<Table> {
    let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let columns = r.headers()?.iter().map(String::from).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|e| crate::error::CliError::Validation(format!("{s:?}: {e}")))
            })
            .collect::<CliResult<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(Table { columns, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_num(1.0), "1.00000000000e0");
        assert_eq!(fmt_num(-0.000123456789012345), "-1.23456789012e-4");
        assert_eq!(fmt_num(f64::INFINITY), "inf");
    }

    #[test]
    fn csv_table_round_trips() {
        let t = Table {
            columns: vec!["t[1/hop]".into(), "P".into()],
            rows: vec![
                vec![0.0, 1.0],
                vec![0.1, 0.987654321098765],
                vec![0.2, f64::INFINITY],
            ],
        };
        let bytes = Artifact::Table(t.clone()).to_bytes(Format::Csv).unwrap();
        let back = parse_table(std::str::from_utf8(&bytes).unwrap()).unwrap();
        assert_eq!(back.columns, t.columns);
        for (a, b) in back.rows.iter().flatten().zip(t.rows.iter().flatten()) {
            assert!(a == b || ((a - b) / b).abs() < 5e-12);
        }
    }

    #[test]
    fn report_csv_blank_for_missing() {
        let mut r = Report::default();
        r.number("x", f64::INFINITY);
        r.push("regime", "zeno");
        let s = String::from_utf8(Artifact::Report(r).to_bytes(Format::Csv).unwrap()).unwrap();
        assert_eq!(s, "quantity,value\nx,\nregime,zeno\n");
    }
}
