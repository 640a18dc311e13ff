use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dcpso::analysis::ComparisonReport;
use dcpso::benchmarks::list_functions;
use dcpso::harness::{self, exit_code, ExperimentConfig, SweepTable};

#[derive(Parser)]
#[command(
    name = "dcpso",
    version,
    about = "Run and report particle swarm experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Overrides {
    /// Write artifacts here instead of the config's output_dir.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (0 = available parallelism).
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every configured (function, algorithm, trial).
    Run {
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Repeat the experiment for each refreshing gap M.
    SweepM {
        config: PathBuf,
        /// Comma-separated M values.
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<u32>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Compare the full method with its three ablation variants.
    Ablation {
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Print the benchmark registry.
    ListFunctions,
    /// Rebuild report.json and report.csv from an experiment directory.
    Report { dir: PathBuf },
}

fn load(path: &Path, o: &Overrides) -> dcpso::Result<ExperimentConfig> {
    let mut c = ExperimentConfig::load(path)?;
    if let Some(out) = &o.out {
        c.output_dir = out.clone();
    }
    if let Some(w) = o.workers {
        c.workers = w;
    }
    Ok(c)
}

fn print_report(r: &ComparisonReport) {
    println!(
        "{:<24} {:<16} {:>12} {:>12} {:>6} {:>3}",
        "function", "algorithm", "mean", "std", "rank", ""
    );
    for c in &r.cells {
        let verdict = c.verdict.map_or("", |v| v.symbol());
        println!(
            "{:<24} {:<16} {:>12.4e} {:>12.4e} {:>6.2} {:>3}",
            c.function, c.algorithm, c.stats.mean, c.stats.std, c.rank, verdict
        );
    }
    println!();
    println!(
        "{:<16} {:>8} {:>5} {:>5} {:>5}  (vs {})",
        "algorithm", "avg rank", "+", "=", "-", r.reference
    );
    for s in &r.summary {
        println!(
            "{:<16} {:>8.2} {:>5} {:>5} {:>5}",
            s.algorithm, s.ave_rank, s.plus, s.equal, s.minus
        );
    }
}

fn print_sweep(t: &SweepTable) {
    println!("{:<24} {:>4} {:>12} {:>12}", "function", "m", "mean", "std");
    for r in &t.rows {
        println!(
            "{:<24} {:>4} {:>12.4e} {:>12.4e}",
            r.function, r.m, r.mean, r.std
        );
    }
}

fn execute(command: Command) -> dcpso::Result<()> {
    match command {
        Command::Run { config, overrides } => {
            let out = harness::run_experiment(&load(&config, &overrides)?)?;
            print_report(&out.report);
        }
        Command::SweepM {
            config,
            m,
            overrides,
        } => {
            print_sweep(&harness::sweep_m(&load(&config, &overrides)?, &m, true)?);
        }
        Command::Ablation { config, overrides } => {
            print_report(&harness::ablation(&load(&config, &overrides)?)?.report);
        }
        Command::ListFunctions => {
            for f in list_functions() {
                println!(
                    "{:<24} {:<20} {}",
                    f.id,
                    f.category.to_string(),
                    f.description
                );
            }
        }
        Command::Report { dir } => print_report(&harness::report_from_dir(&dir)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            log::error!("{e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
