//! Tables emitted as CSV or JSON lines, to a file or standard output.

use std::fs::File;
use std::io::{self, BufWriter, Write};

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

pub struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&'static str]) -> Self {
        Self { headers: headers.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn write(&self, out: &str, format: Format) -> Result<()> {
        let sink: Box<dyn Write> = if out == "-" {
            Box::new(io::stdout().lock())
        } else {
            Box::new(File::create(out).with_context(|| format!("creating `{out}`"))?)
        };
        let mut sink = BufWriter::new(sink);
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut sink);
                w.write_record(&self.headers)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.flush()?;
            }
            Format::Jsonl => {
                for row in &self.rows {
                    let obj: Map<String, Value> =
                        self.headers.iter().zip(row).map(|(h, v)| (h.to_string(), typed(v))).collect();
                    serde_json::to_writer(&mut sink, &obj)?;
                    sink.write_all(b"\n")?;
                }
            }
        }
        sink.flush()?;
        Ok(())
    }
}

/// Integers, finite floats and booleans become JSON scalars; everything else
/// (surds, empty cells) stays a string.
fn typed(cell: &str) -> Value {
    if let Ok(i) = cell.parse::<i64>() {
        return Value::from(i);
    }
    if let Ok(x) = cell.parse::<f64>() {
        if x.is_finite() && !cell.contains(['i', 'n', 'N']) {
            return Value::from(x);
        }
    }
    match cell {
        "true" => Value::Bool(true),
        "false" => Value::Bool(false),
        _ => Value::from(cell),
    }
}
