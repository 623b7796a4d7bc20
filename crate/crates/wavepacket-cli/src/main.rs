//! Command line front end for the wavepacket library. Subcommands emit
//! column-oriented CSV or JSON; nothing is plotted here.
//!
//! Exit codes: 0 success, 1 usage error, 2 physics or validation error,
//! 3 oracle check failed.

// Same deliberate pattern as the library: !(min < max) also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod runs;
mod table;

use std::io::Write;
use std::path::Path;

use clap::Parser;
use serde::Serialize;

use config::{
    resolve_decohere, resolve_density, resolve_oracle, resolve_spread, resolve_sql, DecohereArgs,
    DensityArgs, OracleArgs, SpreadArgs, SqlArgs,
};
use table::CurveTable;

#[derive(Debug)]
pub enum AppError {
    Usage(String),
    Physics(String),
    Io(String),
    OracleFailed,
}

impl From<wavepacket::Error> for AppError {
    fn from(e: wavepacket::Error) -> Self {
        AppError::Physics(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "wavepacket",
    version,
    about = "Free wave packet spreading, thermal averages, measurement bounds, and decoherence curves"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, clap::Subcommand)]
enum Cmd {
    /// Width of a free packet over a time sweep
    #[command(allow_negative_numbers = true)]
    Spread(SpreadArgs),
    /// Position density on a grid at one time
    #[command(allow_negative_numbers = true)]
    Density(DensityArgs),
    /// Measurement bound and optimal width over a squeeze sweep
    #[command(allow_negative_numbers = true)]
    Sql(SqlArgs),
    /// Interference attenuation over a time sweep
    #[command(allow_negative_numbers = true)]
    Decohere(DecohereArgs),
    /// Differential self-check against an independent numerical route
    #[command(allow_negative_numbers = true)]
    Oracle(OracleArgs),
}

fn emit<C: Serialize>(
    data: &CurveTable,
    cfg: &C,
    format: &str,
    out: Option<&Path>,
) -> Result<(), AppError> {
    let text = match format {
        "json" => table::to_json(data, cfg),
        _ => table::to_csv(data),
    };
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| AppError::Io(format!("writing to stdout: {e}")))
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| AppError::Io(format!("writing {}: {e}", path.display()))),
    }
}

fn dispatch(cli: Cli) -> Result<(), AppError> {
    match cli.cmd {
        Cmd::Spread(args) => {
            let cfg = resolve_spread(&args)?;
            let data = runs::run_spread(&cfg)?;
            emit(&data, &cfg, &cfg.format, args.common.out.as_deref())
        }
        Cmd::Density(args) => {
            let cfg = resolve_density(&args)?;
            let data = runs::run_density(&cfg)?;
            emit(&data, &cfg, &cfg.format, args.common.out.as_deref())
        }
        Cmd::Sql(args) => {
            let cfg = resolve_sql(&args)?;
            let data = runs::run_sql(&cfg)?;
            emit(&data, &cfg, &cfg.format, args.common.out.as_deref())
        }
        Cmd::Decohere(args) => {
            let cfg = resolve_decohere(&args)?;
            let data = runs::run_decohere(&cfg)?;
            emit(&data, &cfg, &cfg.format, args.common.out.as_deref())
        }
        Cmd::Oracle(args) => {
            let cfg = resolve_oracle(&args)?;
            let (data, all_pass) = runs::run_oracle(&cfg)?;
            emit(&data, &cfg, &cfg.format, args.common.out.as_deref())?;
            if all_pass {
                Ok(())
            } else {
                Err(AppError::OracleFailed)
            }
        }
    }
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if informational { 0 } else { 1 };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(AppError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            1
        }
        Err(AppError::Io(msg)) => {
            eprintln!("io error: {msg}");
            1
        }
        Err(AppError::Physics(msg)) => {
            eprintln!("physics error: {msg}");
            2
        }
        Err(AppError::OracleFailed) => {
            eprintln!("oracle check failed");
            3
        }
    }
}

fn main() {
    std::process::exit(real_main());
}
