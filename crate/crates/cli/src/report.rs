//! Tabular reports rendered as CSV blocks or a versioned JSON document.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "cauchy-kit/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
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

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// `-0.0` prints as `0`.
fn clean(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => {
                let v = clean(*v);
                if v != 0.0 && v.is_finite() && !(1e-4..1e15).contains(&v.abs()) {
                    format!("{v:e}")
                } else {
                    format!("{v}")
                }
            }
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) if v.is_finite() => json!(clean(*v)),
            Cell::Num(v) => json!(v.to_string()),
            Cell::Int(v) => json!(v),
            Cell::Bool(v) => json!(v),
            Cell::Text(s) => json!(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// One command's output: scalar results, named tables and optional extra JSON
/// (written verbatim under `"details"`).
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    pub config: Map<String, Value>,
    pub scalars: Vec<(String, f64)>,
    pub tables: Vec<Table>,
    pub details: Option<Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self { command: command.to_string(), ..Self::default() }
    }

    pub fn config(mut self, key: &str, value: Value) -> Self {
        self.config.insert(key.to_string(), value);
        self
    }

    pub fn scalar(&mut self, name: &str, value: f64) {
        self.scalars.push((name.to_string(), value));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json()).expect("report serializes");
                s.push('\n');
                s
            }
        }
    }

    /// Blocks separated by blank lines, each with its own header row.
    fn csv(&self) -> String {
        let mut out = String::new();
        let mut blocks = Vec::new();
        if !self.scalars.is_empty() {
            let mut t = Table::new("scalars", &["quantity", "value"]);
            for (k, v) in &self.scalars {
                t.push(vec![k.as_str().into(), (*v).into()]);
            }
            blocks.push(t);
        }
        blocks.extend(self.tables.iter().cloned());
        for (i, t) in blocks.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            writeln!(out, "{}", t.columns.join(",")).unwrap();
            for row in &t.rows {
                let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                writeln!(out, "{}", cells.join(",")).unwrap();
            }
        }
        out
    }

    fn json(&self) -> Value {
        let mut doc = Map::new();
        doc.insert("schema".into(), json!(SCHEMA));
        doc.insert("command".into(), json!(self.command));
        doc.insert("config".into(), Value::Object(self.config.clone()));
        if !self.scalars.is_empty() {
            let scalars: Map<String, Value> =
                self.scalars.iter().map(|(k, v)| (k.clone(), Cell::Num(*v).json())).collect();
            doc.insert("scalars".into(), Value::Object(scalars));
        }
        for t in &self.tables {
            let rows: Vec<Value> = t
                .rows
                .iter()
                .map(|r| Value::Object(t.columns.iter().cloned().zip(r.iter().map(Cell::json)).collect()))
                .collect();
            doc.insert(t.name.clone(), Value::Array(rows));
        }
        if let Some(d) = &self.details {
            doc.insert("details".into(), d.clone());
        }
        Value::Object(doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_blocks_and_json_schema() {
        let mut r = Report::new("demo");
        r.scalar("gamma", 1.5);
        let mut t = Table::new("rows", &["x", "ok"]);
        t.push(vec![(-0.0).into(), true.into()]);
        r.tables.push(t);
        assert_eq!(r.render(Format::Csv), "quantity,value\ngamma,1.5\n\nx,ok\n0,true\n");
        let v: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["rows"][0]["ok"], true);
        assert_eq!(v["scalars"]["gamma"], 1.5);
    }

    #[test]
    fn text_cells_are_quoted_when_needed() {
        assert_eq!(Cell::from("a,b").csv(), "\"a,b\"");
        assert_eq!(Cell::from("plain").csv(), "plain");
    }
}
