//! Tabular results and their CSV / JSON renderings.
//!
//! CSV output starts with a `#` comment naming the command and schema
//! version, followed by the header row. Reals are printed with twelve
//! digits after the decimal point and trailing zeros removed; residuals
//! use scientific notation.

use serde_json::{json, Map, Value};

use crate::config::{Command, Format};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Cell {
    Int(usize),
    Real(f64),
    Residual(f64),
}

impl Cell {
    fn to_csv(self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Real(x) => format_real(x),
            Cell::Residual(x) => format!("{x:.6e}"),
        }
    }

    fn to_json(self) -> Value {
        match self {
            Cell::Int(n) => json!(n),
            Cell::Real(x) | Cell::Residual(x) => json!(x),
        }
    }
}

/// Fixed twelve decimals, trailing zeros trimmed.
pub fn format_real(x: f64) -> String {
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    match s {
        "-0" => "0".to_string(),
        s => s.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub command: Command,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(command: Command, columns: &[&'static str]) -> Self {
        Self {
            command,
            columns: columns.to_vec(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Largest residual cell, if the table has any.
    pub fn max_residual(&self) -> Option<f64> {
        self.rows
            .iter()
            .flatten()
            .filter_map(|c| match c {
                Cell::Residual(r) => Some(*r),
                _ => None,
            })
            .reduce(f64::max)
    }

    /// `true` unless some residual exceeds `tolerance` or is not finite.
    pub fn within(&self, tolerance: f64) -> bool {
        self.rows.iter().flatten().all(|c| match c {
            Cell::Residual(r) => r.is_finite() && *r <= tolerance,
            _ => true,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# raman-lab {} schema v{SCHEMA_VERSION}\n",
            self.command.name()
        );
        for note in &self.notes {
            out.push_str(&format!("# {note}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.to_csv()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let object: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(name, cell)| (name.to_string(), cell.to_json()))
                    .collect();
                Value::Object(object)
            })
            .collect();
        let doc = json!({
            "command": self.command.name(),
            "schema_version": SCHEMA_VERSION,
            "notes": self.notes,
            "columns": self.columns,
            "rows": rows,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("table serializes");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_formatting() {
        assert_eq!(format_real(4.0 / 3.0), "1.333333333333");
        assert_eq!(format_real(0.5), "0.5");
        assert_eq!(format_real(1.0), "1");
        assert_eq!(format_real(-1e-15), "0");
        assert_eq!(format_real(-2.25), "-2.25");
        assert_eq!(format_real(4.5), "4.5");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(Command::DickeCorr, &["N", "correlation"]);
        t.push(vec![Cell::Int(2), Cell::Real(0.5)]);
        assert_eq!(
            t.to_csv(),
            "# raman-lab dicke-corr schema v1\nN,correlation\n2,0.5\n"
        );
        assert_eq!(t.max_residual(), None);
        assert!(t.within(1e-9));
    }

    #[test]
    fn residual_tolerance() {
        let mut t = Table::new(Command::ScanW, &["N", "residual"]);
        t.push(vec![Cell::Int(2), Cell::Residual(1e-12)]);
        assert!(t.within(1e-9));
        t.push(vec![Cell::Int(3), Cell::Residual(1e-6)]);
        assert!(!t.within(1e-9));
        assert_eq!(t.max_residual(), Some(1e-6));
        t.rows[1][1] = Cell::Residual(f64::NAN);
        assert!(!t.within(1e-9));
    }

    #[test]
    fn json_layout() {
        let mut t = Table::new(Command::Rate, &["N", "rate"]);
        t.push(vec![Cell::Int(3), Cell::Real(4.0)]);
        let v: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["command"], "rate");
        assert_eq!(v["rows"][0]["N"], 3);
        assert_eq!(v["rows"][0]["rate"], 4.0);
    }
}
