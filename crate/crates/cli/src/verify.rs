use gammaprod_core::VerificationRecord;
use rayon::prelude::*;

use crate::config::{CliError, RunConfig};
use crate::output;

/// Runs every `(identity, parameter)` pair of the plan; the result is ordered
/// by catalog position, then parameter, regardless of `--jobs`.
pub fn collect(cfg: &RunConfig) -> Result<Vec<VerificationRecord>, CliError> {
    let tasks: Vec<_> = cfg
        .plan
        .iter()
        .flat_map(|&(id, lo, hi)| (lo..=hi).map(move |n| (id, n)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} worker threads: {e}", cfg.jobs)))?;
    pool.install(|| {
        tasks
            .par_iter()
            .map(|&(id, n)| {
                id.run(n, &cfg.ctx)
                    .map_err(|e| CliError::Domain(format!("{id} at {n}: {e}")))
            })
            .collect()
    })
}

/// Verifies, writes the records, and reports whether every record passed.
pub fn run(cfg: &RunConfig) -> Result<bool, CliError> {
    let records = collect(cfg)?;
    let mut out = output::sink(cfg.out_path.as_deref())?;
    output::write_records(&records, cfg.format, &mut *out)?;
    Ok(records.iter().all(|r| r.pass))
}
