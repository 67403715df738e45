use std::io::Write;
use std::path::Path;

use gammaprod_core::cyclotomic::CYCLOTOMIC_MAX;
use gammaprod_core::numbertheory::TABLE_MAX;
use gammaprod_core::{cyclotomic_poly, ArithmeticFunctionTable, FareyIter};
use serde_json::{Map, Value};

use crate::config::{self, CliError};
use crate::output;
use crate::{Format, PrecisionArgs, TableKind};

struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
}

fn required(flag: &str, value: Option<u64>, lo: u64, hi: u64, what: &str) -> Result<u64, CliError> {
    let v = value.ok_or_else(|| CliError::Usage(format!("table {what} requires {flag}")))?;
    if !(lo..=hi).contains(&v) {
        return Err(CliError::Usage(format!(
            "{flag} {v} is outside {lo}..={hi} for table {what}"
        )));
    }
    Ok(v)
}

fn build(
    kind: TableKind,
    n_max: Option<u64>,
    order: Option<u64>,
    precision: &PrecisionArgs,
) -> Result<Table, CliError> {
    let domain = |e: gammaprod_core::Error| CliError::Domain(e.to_string());
    let table = match kind {
        TableKind::Phi | TableKind::Mu | TableKind::Lambda => {
            let name = match kind {
                TableKind::Phi => "phi",
                TableKind::Mu => "mu",
                _ => "lambda",
            };
            let n_max = required("--n-max", n_max, 1, TABLE_MAX, name)?;
            let t = ArithmeticFunctionTable::new(n_max).map_err(domain)?;
            match kind {
                TableKind::Phi => Table {
                    columns: vec!["n", "phi"],
                    rows: (1..=n_max).map(|n| vec![n.into(), t.phi(n).into()]).collect(),
                },
                TableKind::Mu => Table {
                    columns: vec!["n", "mu"],
                    rows: (1..=n_max).map(|n| vec![n.into(), t.mu(n).into()]).collect(),
                },
                _ => {
                    let ctx = config::precision(precision)?;
                    let digits = ctx.decimal_digits();
                    Table {
                        columns: vec!["n", "lambda", "value"],
                        rows: (1..=n_max)
                            .map(|n| {
                                let lam = t.mangoldt(n);
                                let value = if lam.is_zero() {
                                    "0".to_string()
                                } else {
                                    ctx.report(&lam.to_float(ctx.working_bits()))
                                        .to_string_radix(10, Some(digits))
                                };
                                vec![n.into(), lam.to_string().into(), value.into()]
                            })
                            .collect(),
                    }
                }
            }
        }
        TableKind::Cyclotomic => {
            let n_max = required("--n-max", n_max, 1, CYCLOTOMIC_MAX, "cyclotomic")?;
            let rows = (1..=n_max)
                .map(|n| Ok(vec![n.into(), cyclotomic_poly(n).map_err(domain)?.to_string().into()]))
                .collect::<Result<_, CliError>>()?;
            Table {
                columns: vec!["n", "polynomial"],
                rows,
            }
        }
        TableKind::Farey => {
            let order = required("--N", order, 2, gammaprod_core::sequences::FAREY_MAX_ORDER, "farey")?;
            Table {
                columns: vec!["numerator", "denominator", "fraction"],
                rows: FareyIter::new(order)
                    .map_err(domain)?
                    .map(|(k, n)| vec![k.into(), n.into(), format!("{k}/{n}").into()])
                    .collect(),
            }
        }
    };
    Ok(table)
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn write(table: &Table, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => {
            for row in &table.rows {
                let obj: Map<String, Value> = table
                    .columns
                    .iter()
                    .map(|c| c.to_string())
                    .zip(row.iter().cloned())
                    .collect();
                serde_json::to_writer(&mut *out, &obj)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row.iter().map(plain))?;
            }
            w.flush()?;
        }
        Format::Text => {
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(plain).collect();
                writeln!(out, "{}", cells.join("\t"))?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

pub fn run(
    kind: TableKind,
    n_max: Option<u64>,
    order: Option<u64>,
    precision: &PrecisionArgs,
    format: Format,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let table = build(kind, n_max, order, precision)?;
    let mut sink = output::sink(out)?;
    write(&table, format, &mut *sink)
}
