use std::path::PathBuf;

use gammaprod_core::identities::ParameterKind;
use gammaprod_core::numeric::{digits_to_bits, PrecisionContext};
use gammaprod_core::IdentityId;
use thiserror::Error;

use crate::{Format, PrecisionArgs};

pub const DEFAULT_PREC_BITS: u32 = 256;
pub const DEFAULT_N_MAX: u64 = 64;
pub const DEFAULT_ORDER: u64 = 64;
pub const PREC_ENV: &str = "GAMMAPROD_PREC";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

/// Resolves `--prec` / `--digits` / `$GAMMAPROD_PREC` / the default, in that order.
pub fn precision(args: &PrecisionArgs) -> Result<PrecisionContext, CliError> {
    let bits = match (args.prec, args.digits) {
        (Some(p), _) => p,
        (None, Some(d)) => digits_to_bits(d),
        (None, None) => match std::env::var(PREC_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{PREC_ENV}={v:?} is not a bit count")))?,
            Err(_) => DEFAULT_PREC_BITS,
        },
    };
    PrecisionContext::new(bits).map_err(|e| CliError::Usage(e.to_string()))
}

/// Fully resolved settings for a `verify` run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// `(identity, first, last)` inclusive ranges to run.
    pub plan: Vec<(IdentityId, u64, u64)>,
    pub ctx: PrecisionContext,
    pub format: Format,
    pub out_path: Option<PathBuf>,
    pub jobs: usize,
}

impl RunConfig {
    #[allow(clippy::too_many_arguments)]
    pub fn for_verify(
        identity: String,
        n_min: Option<u64>,
        n_max: Option<u64>,
        order: Option<u64>,
        precision_args: &PrecisionArgs,
        format: Format,
        out_path: Option<PathBuf>,
        jobs: Option<usize>,
    ) -> Result<Self, CliError> {
        let ids: Vec<IdentityId> = if identity == "all" {
            IdentityId::ALL.to_vec()
        } else {
            vec![identity.parse().map_err(|_| {
                CliError::Usage(format!(
                    "unknown identity {identity:?}; expected one of: all, theorem1, {}",
                    IdentityId::ALL.map(|i| i.as_str()).join(", ")
                ))
            })?]
        };
        if let (Some(lo), Some(hi)) = (n_min, n_max) {
            if lo > hi {
                return Err(CliError::Usage(format!("--n-min {lo} exceeds --n-max {hi}")));
            }
        }
        let mut plan = Vec::with_capacity(ids.len());
        for id in ids {
            let (dom_lo, dom_hi) = id.domain();
            let (first, last, flag) = match id.parameter_kind() {
                ParameterKind::Denominator => (
                    n_min.unwrap_or(dom_lo).max(dom_lo),
                    n_max.unwrap_or(DEFAULT_N_MAX),
                    "--n-max",
                ),
                ParameterKind::Order => (dom_lo, order.unwrap_or(DEFAULT_ORDER), "--N"),
            };
            if last > dom_hi {
                return Err(CliError::Usage(format!(
                    "{flag} {last} exceeds the cap {dom_hi} for {id}"
                )));
            }
            if first > last {
                return Err(CliError::Usage(format!(
                    "{flag} {last} leaves no parameters for {id} (minimum {dom_lo})"
                )));
            }
            plan.push((id, first, last));
        }
        let jobs = match jobs {
            Some(0) => return Err(CliError::Usage("--jobs must be at least 1".into())),
            Some(j) => j,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        Ok(Self {
            plan,
            ctx: precision(precision_args)?,
            format,
            out_path,
            jobs,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(identity: &str, n_max: Option<u64>, order: Option<u64>) -> Result<RunConfig, CliError> {
        RunConfig::for_verify(
            identity.into(),
            None,
            n_max,
            order,
            &PrecisionArgs {
                prec: Some(128),
                digits: None,
            },
            Format::Json,
            None,
            Some(1),
        )
    }

    #[test]
    fn theorem1_starts_at_two() {
        let c = cfg("theorem1", Some(64), None).unwrap();
        assert_eq!(c.plan, vec![(IdentityId::Theorem1Direct, 2, 64)]);
    }

    #[test]
    fn all_covers_the_catalog() {
        let c = cfg("all", Some(32), Some(32)).unwrap();
        assert_eq!(c.plan.len(), 9);
        assert!(c.plan.contains(&(IdentityId::PsiLcm, 1, 32)));
        assert!(c.plan.contains(&(IdentityId::Eq1, 1, 32)));
    }

    #[test]
    fn config_errors_are_usage_errors() {
        for bad in [
            cfg("farey_product", None, Some(1)),
            cfg("nope", None, None),
            cfg("eq1", Some(100_000), None),
            cfg("theorem1", Some(1), None),
        ] {
            assert_eq!(bad.unwrap_err().exit_code(), 2);
        }
        let inverted = RunConfig::for_verify(
            "eq1".into(),
            Some(9),
            Some(3),
            None,
            &PrecisionArgs::default(),
            Format::Text,
            None,
            None,
        );
        assert!(matches!(inverted, Err(CliError::Usage(_))));
    }

    #[test]
    fn digits_convert_to_bits() {
        let ctx = precision(&PrecisionArgs {
            prec: None,
            digits: Some(50),
        })
        .unwrap();
        assert_eq!(ctx.prec_bits(), 183);
        assert!(precision(&PrecisionArgs {
            prec: Some(10),
            digits: None
        })
        .is_err());
    }
}
