//! Deterministic CSV and JSON rendering of result tables.

use std::io::Write;
use std::path::Path;

use emergent_core::geometry::{format_edge_list, format_fixed, InfoGraph, WeightFunction};
use serde_json::{Map, Value};

use crate::config::Format;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Nine fixed decimals.
    Fixed(f64),
    /// Scientific notation with nine decimals, for quantities spanning
    /// many orders of magnitude.
    Sci(f64),
    Int(u64),
    Text(String),
    Bool(bool),
}

impl Cell {
    /// Text form shared by CSV cells and metadata values.
    pub fn text(&self) -> String {
        match self {
            Cell::Fixed(x) => format_fixed(*x),
            Cell::Sci(x) => format_sci(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Fixed(_) | Cell::Sci(_) => {
                let text = self.text();
                match text.parse::<f64>() {
                    Ok(v) if v.is_finite() => Value::from(v),
                    _ => Value::String(text),
                }
            }
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
        }
    }
}

pub fn format_sci(x: f64) -> String {
    if !x.is_finite() {
        return format_fixed(x);
    }
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.9e}")
}

/// Result records plus `key=value` metadata, rendered in insertion order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            metadata: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.push((key.to_string(), value.to_string()));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::text).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let metadata: Map<String, Value> = self
            .metadata
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Object(
                    self.columns
                        .iter()
                        .cloned()
                        .zip(row.iter().map(Cell::json))
                        .collect(),
                )
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("metadata".into(), Value::Object(metadata));
        doc.insert("records".into(), Value::Array(records));
        let mut text = serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values always serialize");
        text.push('\n');
        text
    }
}

/// Write `text` to `path`, or to stdout when no path is given.
pub fn write_output(text: &str, path: Option<&Path>) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("cannot write `{}`: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
        }
    }
}

/// Write the graph's edge list. The text is built in full before the file
/// is created, so a failed computation leaves no file behind.
pub fn export_edges(graph: &InfoGraph, phi: &WeightFunction, path: &Path) -> CliResult<()> {
    let text = format_edge_list(graph, phi)?;
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write `{}`: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["name", "x", "big", "n", "ok"]);
        t.meta("tool", "emergent");
        t.meta("seed", 3);
        t.push(vec![
            Cell::Text("a".into()),
            Cell::Fixed(2f64.ln()),
            Cell::Sci(1.0e29),
            Cell::Int(4),
            Cell::Bool(true),
        ]);
        t.push(vec![
            Cell::Text("b".into()),
            Cell::Fixed(f64::INFINITY),
            Cell::Sci(-0.0),
            Cell::Int(0),
            Cell::Bool(false),
        ]);
        t
    }

    #[test]
    fn csv_layout() {
        assert_eq!(
            sample().to_csv(),
            "# tool=emergent\n# seed=3\nname,x,big,n,ok\na,0.693147181,1.000000000e29,4,true\nb,inf,0.000000000e0,0,false\n"
        );
    }

    #[test]
    fn json_layout_keeps_column_order() {
        let text = sample().to_json();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["metadata"]["seed"], "3");
        let rec = v["records"][0].as_object().unwrap();
        let keys: Vec<&str> = rec.keys().map(String::as_str).collect();
        assert_eq!(keys, ["name", "x", "big", "n", "ok"]);
        assert_eq!(rec["x"].as_f64(), "0.693147181".parse().ok());
        assert_eq!(v["records"][1]["x"], "inf");
        assert!(text.ends_with("}\n"));
    }

    #[test]
    #[should_panic(expected = "row width")]
    fn ragged_rows_are_a_bug() {
        Table::new(&["a"]).push(vec![]);
    }
}
