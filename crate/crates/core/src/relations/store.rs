//! Append-only JSON-lines relation store.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use super::families::{Provenance, RelationRecord};
use crate::error::{Error, Result};
use crate::hopfalg::LinComb;
use crate::words::YWord;

/// One stored relation with its verdicts.
#[derive(Clone, Debug, Serialize)]
pub struct StoreEntry {
    pub weight: u32,
    pub level: u32,
    pub provenance: Provenance,
    pub combo: LinComb<YWord>,
    pub fcv_verdict: Option<bool>,
    pub scv_residual: Option<f64>,
}

impl StoreEntry {
    pub fn from_record(r: &RelationRecord, fcv_verdict: Option<bool>, scv_residual: Option<f64>) -> Self {
        StoreEntry {
            weight: r.weight,
            level: r.level,
            provenance: r.provenance,
            combo: r.combo.clone(),
            fcv_verdict,
            scv_residual,
        }
    }

    pub fn to_record(&self) -> Result<RelationRecord> {
        RelationRecord::new(self.level, self.provenance, self.combo.clone(), String::new())
    }

    fn parse(line: &str, lineno: usize) -> Result<Self> {
        let err = |m: String| Error::Parse { token: format!("line {lineno}"), message: m };
        let v: Value = serde_json::from_str(line).map_err(|e| err(e.to_string()))?;
        let field = |k: &str| v.get(k).ok_or_else(|| err(format!("missing field `{k}`")));
        let as_u32 = |k: &str| -> Result<u32> {
            field(k)?.as_u64().map(|x| x as u32).ok_or_else(|| err(format!("`{k}` must be an integer")))
        };
        let weight = as_u32("weight")?;
        let level = as_u32("level")?;
        let provenance: Provenance = field("provenance")?
            .as_str()
            .ok_or_else(|| err("`provenance` must be a string".into()))?
            .parse()
            .map_err(|e: Error| err(e.to_string()))?;
        let combo = LinComb::from_json_terms(level, field("combo")?).map_err(|e| err(e.to_string()))?;
        let grades = combo.grades();
        if grades.len() > 1 || grades.first().is_some_and(|g| *g as u32 != weight) {
            return Err(err(format!("combination is not homogeneous of weight {weight}")));
        }
        let fcv_verdict = match v.get("fcv_verdict") {
            None | Some(Value::Null) => None,
            Some(Value::Bool(b)) => Some(*b),
            Some(_) => return Err(err("`fcv_verdict` must be a boolean or null".into())),
        };
        let scv_residual = match v.get("scv_residual") {
            None | Some(Value::Null) => None,
            Some(x) => Some(x.as_f64().ok_or_else(|| err("`scv_residual` must be a number or null".into()))?),
        };
        Ok(StoreEntry { weight, level, provenance, combo, fcv_verdict, scv_residual })
    }
}

/// Appends entries, one JSON object per line.
pub struct StoreWriter {
    file: File,
}

impl StoreWriter {
    pub fn open(path: &Path) -> Result<Self> {
        Ok(StoreWriter { file: OpenOptions::new().create(true).append(true).open(path)? })
    }

    pub fn append(&mut self, e: &StoreEntry) -> Result<()> {
        let line = serde_json::to_string(e).map_err(|x| Error::Io(x.to_string()))?;
        writeln!(self.file, "{line}")?;
        Ok(())
    }
}

/// Reads all entries; blank lines are skipped and errors name the line.
pub fn read_store(path: &Path) -> Result<Vec<StoreEntry>> {
    let f = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for (i, line) in f.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(StoreEntry::parse(&line, i + 1)?);
    }
    Ok(out)
}
