//! Column tables written as CSV or JSON.
//!
//! Output is a pure function of the table: a version comment line, one header
//! line with units, then rows. Non-finite numbers are written as the strings
//! `inf`, `-inf` and `nan`.

use std::fmt::Write as _;

use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(v) => format_number(*v),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Num(v) if v.is_finite() => json!(v),
            Cell::Num(v) => json!(format_number(*v)),
            Cell::Text(s) => json!(s),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(i) => Some(*i as f64),
            Cell::Num(v) => Some(*v),
            Cell::Text(_) => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Shortest round-trip decimal, with string sentinels for non-finite values.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v == f64::INFINITY {
        "inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{v:?}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: String,
    pub columns: Vec<(String, String)>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &str, columns: &[(&str, &str)]) -> Self {
        Self {
            command: command.to_string(),
            columns: columns.iter().map(|(n, u)| (n.to_string(), u.to_string())).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|(n, _)| n == name)
    }

    /// Numeric values of one column.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i].as_f64().unwrap_or(f64::NAN)).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("# wavebasis {}\n", env!("CARGO_PKG_VERSION"));
        let header: Vec<String> = self.columns.iter().map(|(n, u)| format!("{n} [{u}]")).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let columns: Vec<Value> = self.columns.iter().map(|(n, u)| json!({"name": n, "unit": u})).collect();
        let rows: Vec<Value> = self.rows.iter().map(|r| Value::Array(r.iter().map(Cell::json).collect())).collect();
        let doc = json!({
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "columns": columns,
            "rows": rows,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("tables serialize");
        text.push('\n');
        text
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sentinels_and_layout() {
        let mut t = Table::new("demo", &[("x", "length"), ("u", "arb")]);
        t.push(vec![0.5.into(), f64::INFINITY.into()]);
        t.push(vec![1.0.into(), f64::NEG_INFINITY.into()]);
        t.push(vec![2.0.into(), f64::NAN.into()]);
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# wavebasis "));
        assert_eq!(lines[1], "x [length],u [arb]");
        assert_eq!(&lines[2..], &["0.5,inf", "1.0,-inf", "2.0,nan"]);
        let json: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(json["rows"][0][1], "inf");
        assert_eq!(json["rows"][0][0], 0.5);
    }
}
