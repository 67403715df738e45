use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use gammaprod_core::VerificationRecord;

use crate::config::CliError;
use crate::Format;

/// Fixed CSV column order for verification records.
pub const CSV_COLUMNS: [&str; 9] = [
    "identity_id",
    "parameter",
    "prec_bits",
    "lhs",
    "rhs",
    "abs_err",
    "rel_err",
    "pass",
    "elapsed_ms",
];

/// Opens `--out` if given, stdout otherwise.
pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn write_records(records: &[VerificationRecord], format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(CSV_COLUMNS)?;
            for r in records {
                w.write_record([
                    r.identity_id.as_str(),
                    &r.parameter.to_string(),
                    &r.prec_bits.to_string(),
                    &r.lhs,
                    &r.rhs,
                    &r.abs_err,
                    &r.rel_err,
                    if r.pass { "true" } else { "false" },
                    &r.elapsed_ms.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            for r in records {
                writeln!(
                    out,
                    "{} {:<18} {:>6}  abs_err={:<12} rel_err={:<12} tol={}  ({} ms)",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.identity_id.as_str(),
                    r.parameter,
                    r.abs_err,
                    r.rel_err,
                    r.tolerance,
                    r.elapsed_ms,
                )?;
            }
            let failed = records.iter().filter(|r| !r.pass).count();
            writeln!(
                out,
                "{} records, {} passed, {} failed",
                records.len(),
                records.len() - failed,
                failed
            )?;
        }
    }
    out.flush()?;
    Ok(())
}
