use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::Format;

/// Version of every report layout; bump on any column change.
pub const SCHEMA_VERSION: u32 = 1;

pub struct Sink {
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn rows<T: Serialize>(records: &[T]) -> Result<Vec<Map<String, Value>>> {
    records
        .iter()
        .map(|r| match serde_json::to_value(r)? {
            Value::Object(map) => Ok(map),
            _ => anyhow::bail!("report records must be objects"),
        })
        .collect()
}

/// Renders `records` in the chosen format.
pub fn render<T: Serialize>(format: Format, command: &str, records: &[T]) -> Result<Vec<u8>> {
    let rows = rows(records)?;
    let mut buf = Vec::new();
    match format {
        Format::Text => {
            for row in &rows {
                let line: Vec<String> = row.iter().map(|(k, v)| format!("{k}={}", scalar(v))).collect();
                writeln!(buf, "{}", line.join(" "))?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut buf);
            if let Some(first) = rows.first() {
                let mut header: Vec<&str> = first.keys().map(String::as_str).collect();
                header.push("schema_version");
                w.write_record(&header)?;
            }
            for row in &rows {
                let mut rec: Vec<String> = row.values().map(scalar).collect();
                rec.push(SCHEMA_VERSION.to_string());
                w.write_record(&rec)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let doc = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "command": command,
                "records": rows,
            });
            serde_json::to_writer_pretty(&mut buf, &doc)?;
            buf.push(b'\n');
        }
    }
    Ok(buf)
}

impl Sink {
    pub fn emit<T: Serialize>(&self, command: &str, default: Format, records: &[T]) -> Result<()> {
        let bytes = render(self.format.unwrap_or(default), command, records)?;
        match &self.out {
            Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?,
            None => std::io::stdout().write_all(&bytes)?,
        }
        Ok(())
    }
}
