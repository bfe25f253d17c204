use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde_json::{json, Value};

pub const SCHEMA: &str = "graphhom/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A finished run: the JSON document plus the named Betti tables that the
/// CSV export flattens.
#[derive(Debug)]
pub struct Document {
    pub body: Value,
    pub tables: Vec<(String, BTreeMap<i32, usize>)>,
}

impl Document {
    pub fn new(command: &str, mut body: Value) -> Self {
        body["schema"] = json!(SCHEMA);
        body["command"] = json!(command);
        Document { body, tables: Vec::new() }
    }

    pub fn table(mut self, name: impl Into<String>, t: &BTreeMap<i32, usize>) -> Self {
        self.tables.push((name.into(), t.clone()));
        self
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>, Failure> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.body).map_err(Failure::internal)?;
                s.push('\n');
                Ok(s.into_bytes())
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| Failure::internal(e);
                w.write_record(["schema", "table", "degree", "dim"]).map_err(io)?;
                for (name, t) in &self.tables {
                    for (k, n) in t {
                        w.write_record([SCHEMA, name, &k.to_string(), &n.to_string()]).map_err(io)?;
                    }
                }
                w.into_inner().map_err(|e| Failure::internal(e.error()))
            }
        }
    }

    pub fn write(&self, format: Format, out: Option<&Path>) -> Result<(), Failure> {
        let bytes = self.render(format)?;
        match out {
            Some(p) => std::fs::write(p, bytes)
                .map_err(|e| Failure::new(1, "io", format!("cannot write {}: {e}", p.display()))),
            None => std::io::stdout()
                .write_all(&bytes)
                .map_err(|e| Failure::new(1, "io", e.to_string())),
        }
    }
}

/// Error leaving the process with `code`; `partial` is still written
/// before the error line.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
    pub partial: Option<Document>,
}

impl Failure {
    pub fn new(code: i32, kind: &'static str, message: impl Into<String>) -> Self {
        Failure {
            code,
            kind,
            message: message.into(),
            partial: None,
        }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Self::new(2, "invalid_config", message)
    }

    pub fn internal(e: impl std::fmt::Display) -> Self {
        Self::new(1, "internal", e.to_string())
    }

    pub fn line(&self) -> String {
        json!({"schema": SCHEMA, "error": self.kind, "exit": self.code, "message": self.message}).to_string()
    }
}
