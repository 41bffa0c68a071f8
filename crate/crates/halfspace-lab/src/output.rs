//! Single-owner output: stdout or a file, JSON documents or CSV tables.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use serde::Serialize;

use crate::error::LabError;

/// Shortest round-trip decimal, switching to exponent form for magnitudes
/// below 1e-4 so tails stay readable.
pub fn num(x: f64) -> String {
    if x != 0.0 && x.abs() < 1e-4 {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

pub struct Sink {
    path: Option<PathBuf>,
}

impl Sink {
    pub fn new(path: Option<PathBuf>) -> Self {
        Sink { path }
    }

    fn open(&self) -> Result<Box<dyn Write>, LabError> {
        Ok(match &self.path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    pub fn json(&self, doc: &impl Serialize) -> Result<(), LabError> {
        let mut w = self.open()?;
        serde_json::to_writer_pretty(&mut w, doc).map_err(io::Error::from)?;
        writeln!(w)?;
        w.flush()?;
        Ok(())
    }

    pub fn text(&self, body: &str) -> Result<(), LabError> {
        let mut w = self.open()?;
        w.write_all(body.as_bytes())?;
        w.flush()?;
        Ok(())
    }

    /// Header row first, then records, then one `# config: {...}` line
    /// carrying the effective configuration.
    pub fn csv(&self, header: &[&str], rows: &[Vec<String>], config: &impl Serialize) -> Result<(), LabError> {
        let mut w = self.open()?;
        {
            let mut c = csv::WriterBuilder::new().delimiter(b',').from_writer(&mut w);
            c.write_record(header)?;
            for r in rows {
                c.write_record(r)?;
            }
            c.flush()?;
        }
        writeln!(w, "# config: {}", serde_json::to_string(config).map_err(io::Error::from)?)?;
        w.flush()?;
        Ok(())
    }
}
