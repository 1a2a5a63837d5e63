use serde_json::{Map, Value};

use super::Format;
use crate::error::{Error, Result};

/// Header plus rows, written with the `csv` crate.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str], rows: Vec<Vec<String>>) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows }
    }
}

/// One result in all three output shapes.
#[derive(Clone, Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub table: Table,
}

impl Report {
    pub fn scalar(text: String, json: Value, header: &[&str], row: Vec<String>) -> Self {
        Report { text: text + "\n", json, table: Table::new(header, vec![row]) }
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Text => {
                let mut t = self.text.clone();
                if !t.ends_with('\n') {
                    t.push('\n');
                }
                Ok(t.into_bytes())
            }
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&canonical(&self.json)).map_err(|e| Error::Internal(e.to_string()))?;
                s.push('\n');
                Ok(s.into_bytes())
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.table.header).map_err(|e| Error::Internal(e.to_string()))?;
                for r in &self.table.rows {
                    w.write_record(r).map_err(|e| Error::Internal(e.to_string()))?;
                }
                w.into_inner().map_err(|e| Error::Internal(e.to_string()))
            }
        }
    }
}

/// Recursively sorted object keys, so output bytes do not depend on map order.
fn canonical(v: &Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            let mut out = Map::new();
            for k in keys {
                out.insert(k.clone(), canonical(&m[k]));
            }
            Value::Object(out)
        }
        Value::Array(a) => Value::Array(a.iter().map(canonical).collect()),
        other => other.clone(),
    }
}
