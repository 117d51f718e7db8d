//! Deterministic text, CSV and JSON emission.

use std::io::Write;

use serde_json::Value;

use crate::{CliError, Global};

/// Shortest decimal string that reads back to the same `f64`.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn json_num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    F(f64),
    S(String),
    B(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::F(x) => num(*x),
            Cell::S(s) => s.clone(),
            Cell::B(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::F(x) => json_num(*x),
            Cell::S(s) => Value::String(s.clone()),
            Cell::B(b) => Value::Bool(*b),
            Cell::Empty => Value::Null,
        }
    }
}

pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
            s.push('\n');
        }
        s
    }

    /// One object per row, keyed by the header.
    pub fn to_json(&self) -> Vec<Value> {
        self.rows
            .iter()
            .map(|r| {
                let obj = self.header.iter().zip(r).map(|(h, c)| (h.to_string(), c.json())).collect();
                Value::Object(obj)
            })
            .collect()
    }
}

/// `key: value` lines in insertion order.
#[derive(Default)]
pub struct Record {
    fields: Vec<(&'static str, Cell)>,
}

impl Record {
    pub fn add(&mut self, key: &'static str, value: Cell) -> &mut Self {
        self.fields.push((key, value));
        self
    }

    pub fn to_text(&self) -> String {
        self.fields.iter().map(|(k, v)| format!("{k}: {}\n", v.csv())).collect()
    }

    pub fn to_json(&self) -> serde_json::Map<String, Value> {
        self.fields.iter().map(|(k, v)| (k.to_string(), v.json())).collect()
    }
}

pub fn emit(g: &Global, text: &str, json: &Value) -> Result<(), CliError> {
    let rendered = if g.json {
        let mut s = serde_json::to_string_pretty(json).expect("serializable");
        s.push('\n');
        s
    } else {
        text.to_string()
    };
    let io = |e: std::io::Error| CliError { code: 1, message: format!("output: {e}") };
    match &g.out {
        Some(path) => std::fs::write(path, rendered).map_err(io),
        None => std::io::stdout().lock().write_all(rendered.as_bytes()).map_err(io),
    }
}
