//! Command-line front end: run a configured experiment and write its table.
//!
//! Exit codes: 0 on success, 2 on configuration errors, 3 on I/O failures.

use clap::{Parser, Subcommand};
use qec_monitor::experiment::{emit, run, ExperimentConfig, ExperimentKind, OutputFormat};
use qec_monitor::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qec-monitor", version, about = "Quantum code analysis under random Pauli monitoring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct RunArgs {
    /// Experiment description (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Override the config seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output path; stdout when omitted and the config names no file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format override.
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Worker thread count (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo preservation sweep over a probability grid.
    Sweep(RunArgs),
    /// Concatenation-flow traces over a probability grid.
    Concat(RunArgs),
    /// Bisect the measurement threshold along a frequency ray.
    Threshold(RunArgs),
    /// Y-line diagnostics on the torus.
    Ycommutant(RunArgs),
    /// Haar purity statistics.
    Haar(RunArgs),
}

impl Command {
    fn kind(&self) -> ExperimentKind {
        match self {
            Command::Sweep(_) => ExperimentKind::Sweep,
            Command::Concat(_) => ExperimentKind::Concat,
            Command::Threshold(_) => ExperimentKind::Threshold,
            Command::Ycommutant(_) => ExperimentKind::Ycommutant,
            Command::Haar(_) => ExperimentKind::Haar,
        }
    }

    fn args(&self) -> &RunArgs {
        match self {
            Command::Sweep(a)
            | Command::Concat(a)
            | Command::Threshold(a)
            | Command::Ycommutant(a)
            | Command::Haar(a) => a,
        }
    }
}

fn execute(cli: &Cli) -> qec_monitor::Result<()> {
    let args = cli.command.args();
    let mut cfg = ExperimentConfig::load(&args.config)?;
    if cfg.kind != cli.command.kind() {
        return Err(Error::InvalidParameter(format!(
            "config kind {:?} does not match the subcommand",
            cfg.kind
        )));
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &args.out {
        cfg.out = Some(out.clone());
    }
    if let Some(format) = args.format {
        cfg.format = format;
    }
    let table = match args.threads {
        None => run(&cfg)?,
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
            pool.install(|| run(&cfg))?
        }
    };
    match &cfg.out {
        Some(path) => emit(&table, path, cfg.format)?,
        None => print!("{}", table.render(cfg.format)),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Io(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
