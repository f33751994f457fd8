//! The one output shape every command produces: a column-named table with
//! deterministic comment/metadata lines, rendered as CSV or JSON. Column
//! order and field names are frozen in `schemas/cli-output.schema.json`.

use crate::error::CliError;
use serde_json::{json, Map, Value};
use std::io::Write;

/// A single cell. Floats are rendered with Rust's shortest round-trip
/// formatting, so re-parsing any output reproduces the value exactly.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Str(String),
    /// Not applicable (empty CSV field, JSON null).
    Null,
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => v.to_string(),
            Cell::Str(s) => s.clone(),
            Cell::Null => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => json!(v),
            Cell::Str(s) => json!(s),
            Cell::Null => Value::Null,
        }
    }
}

/// A finished result table.
#[derive(Debug)]
pub struct Table {
    command: &'static str,
    /// Deterministic `key = value` annotations (CSV comments / JSON meta).
    notes: Vec<(String, Value)>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
    /// Extra top-level summary fields (e.g. the macro-check verdict).
    summary: Vec<(&'static str, Value)>,
}

impl Table {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Self {
            command,
            notes: Vec::new(),
            columns,
            rows: Vec::new(),
            summary: Vec::new(),
        }
    }

    pub fn note(&mut self, key: &str, value: impl Into<Value>) {
        self.notes.push((key.to_string(), value.into()));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn summarize(&mut self, key: &'static str, value: impl Into<Value>) {
        self.summary.push((key, value.into()));
    }

    /// Renders the table. The timestamp, when present, occupies exactly one
    /// line in either format, so outputs differ between runs in that line
    /// alone.
    pub fn render(&self, format: crate::args::Format, timestamp: Option<String>) -> String {
        match format {
            crate::args::Format::Csv => self.to_csv(timestamp),
            crate::args::Format::Json => self.to_json(timestamp),
        }
    }

    fn to_csv(&self, timestamp: Option<String>) -> String {
        let mut out = String::new();
        if let Some(stamp) = timestamp {
            out.push_str(&format!("# generated = {stamp}\n"));
        }
        out.push_str(&format!("# command = {}\n", self.command));
        for (key, value) in &self.notes {
            out.push_str(&format!("# {key} = {}\n", json_scalar_to_plain(value)));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::to_csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        for (key, value) in &self.summary {
            out.push_str(&format!("# {key} = {}\n", json_scalar_to_plain(value)));
        }
        out
    }

    fn to_json(&self, timestamp: Option<String>) -> String {
        let mut root = Map::new();
        root.insert("command".into(), json!(self.command));
        if let Some(stamp) = timestamp {
            root.insert("generated".into(), json!(stamp));
        }
        if !self.notes.is_empty() {
            let mut meta = Map::new();
            for (key, value) in &self.notes {
                meta.insert(key.clone(), value.clone());
            }
            root.insert("meta".into(), Value::Object(meta));
        }
        root.insert("columns".into(), json!(self.columns));
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    obj.insert((*name).into(), cell.to_json());
                }
                Value::Object(obj)
            })
            .collect();
        root.insert("rows".into(), json!(rows));
        for (key, value) in &self.summary {
            root.insert((*key).into(), value.clone());
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(root))
            .expect("tables contain only finite scalars");
        text.push('\n');
        text
    }
}

fn json_scalar_to_plain(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Writes rendered text to the requested sink. Filesystem problems are the
/// one error class that is nobody's invariant: exit code 3.
pub fn write_out(path: Option<&std::path::Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".to_string(),
                    source,
                })
        }
    }
}
