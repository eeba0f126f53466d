//! Artifact rendering.
//!
//! Every command produces one [`Artifact`]: a header, typed rows, and the
//! parameters it was invoked with. CSV prints values at the configured
//! precision (ties round to even, LF line endings, no quoting; the payload
//! is plain numbers and short labels). JSON carries the same rows at full
//! precision under a `meta`/`rows` envelope so downstream tooling never
//! loses digits to display rounding.

use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// One table cell. `Num` renders at the configured precision, `Sci` in
/// scientific notation (used for residuals and refinement deltas that would
/// collapse to zero in fixed point), `Int`, `Text` and `Bool` verbatim.
#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Sci(f64),
    Text(&'static str),
    Bool(bool),
    Empty,
}

impl Cell {
    fn render_csv(&self, precision: usize) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => format!("{v:.precision$}"),
            Cell::Sci(v) => format!("{v:.precision$e}"),
            Cell::Text(s) => (*s).to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn render_json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Num(v) | Cell::Sci(v) => Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::from(*s),
            Cell::Bool(v) => Value::from(*v),
            Cell::Empty => Value::Null,
        }
    }
}

pub struct Artifact {
    command: &'static str,
    parameters: Map<String, Value>,
    extra_meta: Map<String, Value>,
    header: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Artifact {
    pub fn new(command: &'static str, header: &[&'static str]) -> Self {
        Artifact {
            command,
            parameters: Map::new(),
            extra_meta: Map::new(),
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    /// Records an invocation parameter for the JSON `meta` block.
    pub fn parameter(&mut self, key: &str, value: Value) {
        self.parameters.insert(key.to_string(), value);
    }

    /// Attaches an extra top-level `meta` entry (e.g. a summary block).
    pub fn meta(&mut self, key: &str, value: Value) {
        self.extra_meta.insert(key.to_string(), value);
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.header.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn render(&self, format: Format, precision: usize) -> String {
        match format {
            Format::Csv => self.render_csv(precision),
            Format::Json => self.render_json(),
        }
    }

    fn render_csv(&self, precision: usize) -> String {
        let mut text = self.header.join(",");
        text.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|c| c.render_csv(precision)).collect();
            text.push_str(&line.join(","));
            text.push('\n');
        }
        text
    }

    fn render_json(&self) -> String {
        let mut meta = Map::new();
        meta.insert("command".into(), Value::from(self.command));
        meta.insert("artifact_version".into(), Value::from(1));
        meta.insert("parameters".into(), Value::Object(self.parameters.clone()));
        for (k, v) in &self.extra_meta {
            meta.insert(k.clone(), v.clone());
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.header.iter().zip(row) {
                    obj.insert((*name).to_string(), cell.render_json());
                }
                Value::Object(obj)
            })
            .collect();
        let mut root = Map::new();
        root.insert("meta".into(), Value::Object(meta));
        root.insert("rows".into(), Value::Array(rows));
        let mut text = serde_json::to_string_pretty(&Value::Object(root))
            .expect("artifact serialization cannot fail");
        text.push('\n');
        text
    }
}
