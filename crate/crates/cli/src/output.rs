//! Report assembly and JSON/CSV emission.

use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Tabular data for CSV output.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn to_csv(&self) -> csv::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
    }
}

/// Result of one command.
pub struct Report {
    pub passed: bool,
    /// Command-specific JSON fields, merged into the top-level document.
    pub body: Map<String, Value>,
    pub table: Table,
    /// Small JSON summary written to stderr alongside CSV output.
    pub summary: Value,
}

/// Locale-free number formatting shared by every CSV column.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x == 0.0 || (1e-4..1e15).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn nums(xs: &[f64]) -> Vec<String> {
    xs.iter().map(|&x| num(x)).collect()
}

/// Joins a vector into one `;`-separated CSV cell.
pub fn cell(xs: &[f64]) -> String {
    nums(xs).join(";")
}

pub fn emit(
    format: Format,
    config: &impl Serialize,
    report: &Report,
    out: &mut impl Write,
    err: &mut impl Write,
) -> std::io::Result<()> {
    let header = |doc: &mut Map<String, Value>| {
        doc.insert("schema".into(), ckgeo::SCHEMA.into());
        doc.insert(
            "config".into(),
            serde_json::to_value(config).expect("config serializes"),
        );
        doc.insert("passed".into(), report.passed.into());
    };
    match format {
        Format::Json => {
            let mut doc = Map::new();
            header(&mut doc);
            doc.extend(report.body.clone());
            serde_json::to_writer_pretty(&mut *out, &Value::Object(doc))?;
            writeln!(out)
        }
        Format::Csv => {
            out.write_all(
                report
                    .table
                    .to_csv()
                    .map_err(std::io::Error::other)?
                    .as_bytes(),
            )?;
            let mut doc = Map::new();
            header(&mut doc);
            doc.insert("summary".into(), report.summary.clone());
            serde_json::to_writer(&mut *err, &Value::Object(doc))?;
            writeln!(err)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_are_locale_free_and_compact() {
        assert_eq!(num(0.5), "0.5");
        assert_eq!(num(0.0), "0");
        assert_eq!(num(-6.0), "-6");
        assert_eq!(num(1e-6), "1e-6");
        assert_eq!(num(2.5e-12), "2.5e-12");
    }

    #[test]
    fn fields_with_commas_are_quoted() {
        let mut t = Table::new(["name", "k"]);
        t.push(vec!["so(3,1)".into(), num(1.0)]);
        assert_eq!(t.to_csv().unwrap(), "name,k\n\"so(3,1)\",1\n");
    }
}
