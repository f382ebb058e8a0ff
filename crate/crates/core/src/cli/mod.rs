//! Command-line front end: strict TOML config, seeded deterministic runs on a sized worker
//! pool, CSV reports stamped with the config hash. Exit codes: 0 ok, 1 check failed,
//! 2 configuration or input error.

pub mod commands;
pub mod config;
pub mod data;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{cmd_certify, cmd_evolve, cmd_solve, cmd_sweep, Outcome};
pub use config::{DataConfig, DataSource, EvolveConfig, RunConfig, SolveConfig, SweepConfig};
pub use data::{build_data, read_coefficients};
pub use report::config_hash;

use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "stokes2p", version, about = "Two-phase Stokes resolvent/evolution solver and bound checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// TOML run configuration (defaults for every missing section).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Overrides the config seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Report directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "STOKES2P_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Sector sweeps of every symbol bound.
    Certify,
    /// Stationary solves with residual and ratio reports.
    Solve,
    /// Contour inversion with round-trip, causality and maximal-regularity reports.
    Evolve,
    /// Ratio sweeps along λ rays (and optional γ sweep).
    Sweep,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Exit code of a finished run: growth violations are check failures, every other error
/// means the run could not be set up.
pub fn exit_code(r: &Result<Outcome>) -> i32 {
    match r {
        Ok(o) if o.passed => EXIT_OK,
        Ok(_) | Err(Error::Growth { .. }) => EXIT_CHECK,
        Err(_) => EXIT_CONFIG,
    }
}

/// Loads, seeds and validates the config.
pub fn prepare(config: Option<&std::path::Path>, seed: Option<u64>) -> Result<RunConfig> {
    let mut cfg = match config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(s) = seed {
        cfg.seed = s;
    }
    cfg.validated()
}

pub fn dispatch(cmd: Command, cfg: &RunConfig, out: &std::path::Path) -> Result<Outcome> {
    let hash = config_hash(&format!("{cmd:?}\n{}", cfg.canonical()));
    match cmd {
        Command::Certify => cmd_certify(cfg, &hash, out),
        Command::Solve => cmd_solve(cfg, &hash, out),
        Command::Evolve => cmd_evolve(cfg, &hash, out),
        Command::Sweep => cmd_sweep(cfg, &hash, out),
    }
}

/// Runs `f` on a pool of `threads` workers (`None`: rayon's default).
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err(Error::Config("--threads must be at least 1".into()));
        }
        b = b.num_threads(t);
    }
    let pool = b.build().map_err(|e| Error::Config(e.to_string()))?;
    Ok(pool.install(f))
}

/// Full command-line entry point; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let result = prepare(cli.config.as_deref(), cli.seed)
        .and_then(|cfg| with_threads(cli.threads, || dispatch(cli.command, &cfg, &cli.out))?);
    match &result {
        Ok(o) => {
            for f in &o.files {
                log::info!("wrote {}", f.display());
            }
            for line in &o.failures {
                eprintln!("check failed: {line}");
            }
        }
        Err(e) => eprintln!("error: {e}"),
    }
    exit_code(&result)
}

#[cfg(test)]
mod tests;
