//! Payload rendering in the three output formats.

use std::io::Write;

use floorsum_core::{CertifiedValue, Value as SumValue};
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

/// 17 significant digits; non-finite values become `null`.
pub fn float(v: f64) -> Value {
    if !v.is_finite() {
        return Value::Null;
    }
    let text = format!("{v:.16e}");
    Value::Number(
        text.parse::<Number>()
            .expect("scientific notation is valid JSON"),
    )
}

/// Exact values as decimal strings, floats as numbers.
pub fn sum_value(v: &CertifiedValue) -> Value {
    match &v.value {
        SumValue::Exact(n) => Value::String(n.to_string()),
        SumValue::Float(f) => float(*f),
    }
}

/// An ordered set of fields, optionally followed by a table.
#[derive(Debug, Default)]
pub struct Payload {
    fields: Vec<(String, Value)>,
    table: Option<(Vec<String>, Vec<Vec<Value>>)>,
}

impl Payload {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn field(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn table(mut self, header: &[&str], rows: Vec<Vec<Value>>) -> Self {
        self.table = Some((header.iter().map(|s| s.to_string()).collect(), rows));
        self
    }

    pub fn to_json(&self) -> Value {
        let mut map: Map<String, Value> = self.fields.iter().cloned().collect();
        if let Some((header, rows)) = &self.table {
            let rows = rows
                .iter()
                .map(|row| Value::Object(header.iter().cloned().zip(row.iter().cloned()).collect()))
                .collect();
            map.insert("rows".into(), Value::Array(rows));
        }
        Value::Object(map)
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
                writeln!(out)
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(out);
                let (header, rows): (Vec<String>, Vec<Vec<Value>>) = match &self.table {
                    Some((h, r)) => (h.clone(), r.clone()),
                    None => (
                        self.fields.iter().map(|f| f.0.clone()).collect(),
                        vec![self.fields.iter().map(|f| f.1.clone()).collect()],
                    ),
                };
                w.write_record(&header)?;
                for row in rows {
                    w.write_record(row.iter().map(cell))?;
                }
                w.flush()
            }
            Format::Plain => {
                for (k, v) in &self.fields {
                    writeln!(out, "{k}: {}", cell(v))?;
                }
                if let Some((header, rows)) = &self.table {
                    writeln!(out, "{}", header.join("\t"))?;
                    for row in rows {
                        let cells: Vec<String> = row.iter().map(cell).collect();
                        writeln!(out, "{}", cells.join("\t"))?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// A JSON value as bare text: strings unquoted, arrays comma-joined.
pub fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}
