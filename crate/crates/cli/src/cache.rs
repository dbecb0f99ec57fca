use std::fs::{self, OpenOptions};
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use irred::record::ConstructionRecord;

/// Append-only JSON-lines store of construction records.
pub struct Cache {
    path: PathBuf,
}

impl Cache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Cache { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Last matching record, if it still verifies. Unparseable lines and
    /// records that fail verification are skipped with a warning.
    pub fn lookup(&self, p: &str, k: u64, d: u64, modulus: Option<&str>) -> Result<Option<ConstructionRecord>> {
        let text = match fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e).with_context(|| format!("reading cache {}", self.path.display())),
        };
        let mut hit = None;
        for (no, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            match ConstructionRecord::from_json_line(line) {
                Ok(rec) if rec.matches(p, k, d, modulus) => hit = Some(rec),
                Ok(_) => {}
                Err(e) => log::warn!("{}:{}: skipping corrupt cache line ({e})", self.path.display(), no + 1),
            }
        }
        let Some(rec) = hit else { return Ok(None) };
        match rec.check() {
            Ok(()) if rec.verified => Ok(Some(rec)),
            Ok(()) => {
                log::warn!("cached record is not marked verified; recomputing");
                Ok(None)
            }
            Err(e) => {
                log::warn!("cached record failed verification ({e}); recomputing");
                Ok(None)
            }
        }
    }

    /// Appends one record as a single write.
    pub fn append(&self, rec: &ConstructionRecord) -> Result<()> {
        let mut line = rec.to_json_line();
        line.push('\n');
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .with_context(|| format!("opening cache {}", self.path.display()))?;
        file.write_all(line.as_bytes())
            .with_context(|| format!("appending to cache {}", self.path.display()))?;
        Ok(())
    }
}
