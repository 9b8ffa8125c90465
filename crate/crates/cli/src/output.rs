//! Report sink: pretty JSON documents, JSON lines, or CSV tables.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde_json::Value;

use crate::UsageError;

pub struct Sink {
    out: BufWriter<Box<dyn Write>>,
    pub csv: bool,
}

impl Sink {
    pub fn open(path: Option<&Path>, csv: bool) -> Result<Self, UsageError> {
        let w: Box<dyn Write> = match path {
            Some(p) => Box::new(File::create(p).map_err(|e| UsageError(format!("{}: {e}", p.display())))?),
            None => Box::new(std::io::stdout()),
        };
        Ok(Sink { out: BufWriter::new(w), csv })
    }

    pub fn document(&mut self, v: &Value) -> Result<(), UsageError> {
        let text = serde_json::to_string_pretty(v).expect("serializable");
        writeln!(self.out, "{text}").map_err(io)
    }

    pub fn line(&mut self, v: &Value) -> Result<(), UsageError> {
        let text = serde_json::to_string(v).expect("serializable");
        writeln!(self.out, "{text}").map_err(io)?;
        self.out.flush().map_err(io)
    }

    pub fn table(&mut self, header: &[&str], rows: &[Vec<String>]) -> Result<(), UsageError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header).map_err(|e| UsageError(e.to_string()))?;
        for r in rows {
            w.write_record(r).map_err(|e| UsageError(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| UsageError(e.to_string()))?;
        self.out.write_all(&bytes).map_err(io)
    }

    pub fn finish(mut self) -> Result<(), UsageError> {
        self.out.flush().map_err(io)
    }
}

fn io(e: std::io::Error) -> UsageError {
    UsageError(format!("write failed: {e}"))
}
