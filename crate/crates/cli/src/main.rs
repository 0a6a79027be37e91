use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, ValueEnum};
use cswap_core::swaptest::BitOrder;

mod experiments;
mod grid;
mod record;
mod run;
mod sweep;
mod validate;

use grid::Axis;
use run::{RunConfig, DEFAULT_SEED};

/// Bad invocation; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    /// Print every experiment id with what it shows
    List,
    /// Run one experiment on its grid
    Run,
    /// Sweep a state family over a grid with one test layout
    Sweep,
    /// Run one experiment and add sampled-shot columns
    Sample,
    /// Run the self-checks and compare against the stored references
    Validate,
}

/// Controlled-SWAP experiments written as CSV.
#[derive(Debug, Parser)]
#[command(name = "cswap-lab", version)]
struct Cli {
    command: Command,
    /// Experiment id, see `list`
    #[arg(long)]
    experiment: Option<String>,
    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Shots drawn per row; `sample` defaults to 10000
    #[arg(long)]
    shots: Option<u64>,
    #[arg(long, env = "CSWAP_LAB_WORKERS")]
    workers: Option<usize>,
    /// Replace one grid axis, e.g. delta=0:pi/4:16 (repeatable)
    #[arg(long = "grid", value_name = "KEY=START:STOP:STEPS")]
    grid: Vec<Axis>,
    #[arg(long, default_value = "GROUP_FIRST", value_name = "GROUP_FIRST|GROUP_LAST")]
    bit_order: BitOrder,
    /// State family for `sweep`
    #[arg(long)]
    family: Option<String>,
    /// Test layout for `sweep`: full, equivalence, bipartite:0,1, pair:0,2 or groups:0,1/2
    #[arg(long, default_value = "full")]
    test: String,
    /// Directory of reference CSVs for `validate`; the built-in set when absent
    #[arg(long)]
    golden: Option<PathBuf>,
    /// Write fresh reference CSVs into this directory instead of validating
    #[arg(long)]
    bless: Option<PathBuf>,
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn config(cli: &Cli, shots: Option<u64>) -> Result<RunConfig> {
    let workers = match cli.workers {
        Some(0) => return Err(usage("--workers must be at least 1")),
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    if shots == Some(0) {
        return Err(usage("--shots must be at least 1"));
    }
    Ok(RunConfig { seed: cli.seed, shots, order: cli.bit_order, workers })
}

fn named(cli: &Cli) -> Result<experiments::Experiment> {
    let id = cli.experiment.as_deref().ok_or_else(|| usage("--experiment is required"))?;
    let mut exp = experiments::find(id).ok_or_else(|| usage(format!("unknown experiment {id:?}; see `cswap-lab list`")))?;
    exp.grid.apply(&cli.grid)?;
    Ok(exp)
}

fn dispatch(cli: &Cli) -> Result<bool> {
    match cli.command {
        Command::List => {
            let mut w = record::csv_writer(output(&cli.out)?);
            record::write_line(&mut w, ["id", "kind", "summary"].map(String::from))?;
            for e in experiments::all() {
                record::write_line(&mut w, [e.id, e.kind.as_str().into(), e.summary.into()])?;
            }
            w.flush()?;
        }
        Command::Run | Command::Sample => {
            let shots = match cli.command {
                Command::Sample => Some(cli.shots.unwrap_or(10_000)),
                _ => cli.shots,
            };
            let exp = named(cli)?;
            run::run_to(&exp, &config(cli, shots)?, output(&cli.out)?)?;
        }
        Command::Sweep => {
            let family = cli.family.as_deref().ok_or_else(|| usage("--family is required"))?;
            let mut exp = sweep::build(family, &cli.test)?;
            exp.grid.apply(&cli.grid)?;
            run::run_to(&exp, &config(cli, cli.shots)?, output(&cli.out)?)?;
        }
        Command::Validate => {
            if let Some(dir) = &cli.bless {
                validate::bless(dir)?;
                return Ok(true);
            }
            return validate::run_all(cli.golden.as_deref(), &mut output(&cli.out)?);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
