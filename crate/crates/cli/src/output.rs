use std::io::Write;

use anyhow::{Context, Result};
use serde::Serialize;

use crate::{Common, Format};

/// Rows as CSV (header from the field names) or as a pretty JSON array.
pub fn emit<T: Serialize>(rows: &[T], common: &Common) -> Result<()> {
    let bytes = match common.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r)?;
            }
            w.into_inner().context("flushing csv")?
        }
        Format::Json => {
            let mut v = serde_json::to_vec_pretty(rows)?;
            v.push(b'\n');
            v
        }
    };
    write_out(&bytes, common)
}

/// A single structured report; CSV gets one header line and one row.
pub fn emit_one<T: Serialize>(report: &T, common: &Common) -> Result<()> {
    match common.format {
        Format::Csv => emit(std::slice::from_ref(report), common),
        Format::Json => {
            let mut v = serde_json::to_vec_pretty(report)?;
            v.push(b'\n');
            write_out(&v, common)
        }
    }
}

fn write_out(bytes: &[u8], common: &Common) -> Result<()> {
    match &common.output {
        Some(path) => std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}
