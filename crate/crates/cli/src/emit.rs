use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::args::Format;
use crate::{Failure, Outcome};

/// A plot-ready table with a fixed column order.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Outcome<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header).map_err(Failure::io)?;
        for row in &self.rows {
            w.write_record(row).map_err(Failure::io)?;
        }
        w.flush().map_err(Failure::io)
    }
}

pub struct Emission {
    pub json: Value,
    pub table: Table,
    /// A verification found violations (exit status 2).
    pub violations: bool,
}

impl Emission {
    pub fn new<T: Serialize>(report: &T, table: Table, violations: bool) -> Outcome<Self> {
        Ok(Emission {
            json: to_json(report)?,
            table,
            violations,
        })
    }

    pub fn write<W: Write>(&self, format: Format, mut out: W) -> Outcome<()> {
        match format {
            Format::Csv => self.table.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, &self.json).map_err(Failure::io)?;
                writeln!(out).map_err(Failure::io)
            }
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Outcome<Value> {
    serde_json::to_value(value).map_err(|e| Failure(format!("serialization failed: {e}")))
}

/// Shortest round-trip decimal.
pub fn float(x: f64) -> String {
    format!("{x:?}")
}
