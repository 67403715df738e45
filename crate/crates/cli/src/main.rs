//! `gammaprod`: evaluate ln Γ at rationals, verify the Gamma product
//! identities over parameter ranges, and print arithmetic tables.

mod config;
mod eval;
mod output;
mod table;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::CliError;

#[derive(Debug, Parser)]
#[command(name = "gammaprod", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone, Copy, Default)]
pub struct PrecisionArgs {
    /// Working precision in bits (default 256, or $GAMMAPROD_PREC).
    #[arg(long, conflicts_with = "digits")]
    pub prec: Option<u32>,
    /// Decimal digits; converted to ceil(D * 3.3219) + 16 bits.
    #[arg(long)]
    pub digits: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Phi,
    Mu,
    Lambda,
    Cyclotomic,
    Farey,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print ln Γ(k/n) and Γ(k/n).
    Eval {
        /// A positive rational `k/n` or integer `k`.
        #[arg(allow_hyphen_values = true)]
        value: String,
        #[command(flatten)]
        precision: PrecisionArgs,
    },
    /// Verify one identity (or `all`) over a parameter range.
    Verify {
        /// Catalog name, `theorem1`, or `all`.
        identity: String,
        #[arg(long)]
        n_min: Option<u64>,
        #[arg(long)]
        n_max: Option<u64>,
        /// Upper Farey order / lcm range for the Farey-family identities.
        #[arg(long = "N")]
        order: Option<u64>,
        #[command(flatten)]
        precision: PrecisionArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Worker threads; defaults to the number of available cores.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print a table of exact values.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        #[arg(long)]
        n_max: Option<u64>,
        #[arg(long = "N")]
        order: Option<u64>,
        #[command(flatten)]
        precision: PrecisionArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Eval { value, precision } => {
            eval::run(&value, &precision)?;
            Ok(true)
        }
        Command::Verify {
            identity,
            n_min,
            n_max,
            order,
            precision,
            format,
            out,
            jobs,
        } => {
            let cfg = config::RunConfig::for_verify(identity, n_min, n_max, order, &precision, format, out, jobs)?;
            verify::run(&cfg)
        }
        Command::Table {
            kind,
            n_max,
            order,
            precision,
            format,
            out,
        } => {
            table::run(kind, n_max, order, &precision, format, out.as_deref())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("gammaprod: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
