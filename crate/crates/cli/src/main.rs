use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use cubulator_cli::job::{parse_budget, parse_word, Command, Format, JobSpec};

/// Bruhat intervals, Kazhdan-Lusztig polynomials and cubical lattice search.
#[derive(Parser)]
#[command(name = "cubulator", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Target {
    /// Type name (A3, B4, Atilde2, I2(7), ...) or a JSON Coxeter matrix.
    #[arg(long)]
    system: String,
    /// `w0`, `1`, `y_m:K` or a label word like "2 1 3 2".
    #[arg(long, conflicts_with = "word")]
    element: Option<String>,
    /// Generator labels separated by spaces or commas.
    #[arg(long)]
    word: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Elements and edges of [1, y].
    Interval {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// KL and R polynomials over [1, y] with the triviality report.
    Kl {
        #[command(flatten)]
        target: Target,
        /// Every pair of the interval instead of pairs below y.
        #[arg(long)]
        full: bool,
    },
    /// Search for a cubical lattice spanning [1, y].
    Cubulate {
        #[command(flatten)]
        target: Target,
        /// Node budget: an integer, 10^k or 1ek.
        #[arg(long)]
        budget: Option<String>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Checkpoint file, read if present and written when the budget runs out.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Closed-form cubulations: boolean, dihedral, nff, atilde2.
    Construct {
        tag: String,
        #[arg(long)]
        system: String,
        #[arg(long)]
        element: Option<String>,
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        m: Option<u32>,
    },
    /// Ball sizes, Poincaré and Bott series, quantum shape probe.
    Growth {
        #[arg(long)]
        system: String,
        #[arg(long, default_value_t = 10)]
        radius: usize,
    },
    /// Run a named acceptance suite: smoke, classical, negative, atilde2, growth.
    Suite { name: String },
    /// Run a JSON job file.
    Run { job: PathBuf },
}

fn words(word: Option<String>) -> Result<Option<Vec<i64>>> {
    word.as_deref().map(parse_word).transpose()
}

fn job_from(cli: Cli) -> Result<JobSpec> {
    let mut job = JobSpec { out: cli.out, ..JobSpec::default() };
    match cli.cmd {
        Cmd::Interval { target, format } => {
            job.command = Some(Command::Interval);
            job.format = Some(format);
            fill(&mut job, target)?;
        }
        Cmd::Kl { target, full } => {
            job.command = Some(Command::Kl);
            job.full = Some(full);
            fill(&mut job, target)?;
        }
        Cmd::Cubulate { target, budget, workers, checkpoint } => {
            job.command = Some(Command::Cubulate);
            job.budget = budget.as_deref().map(parse_budget).transpose()?;
            job.workers = Some(workers);
            job.checkpoint = checkpoint;
            fill(&mut job, target)?;
        }
        Cmd::Construct { tag, system, element, word, m } => {
            job.command = Some(Command::Construct);
            job.tag = Some(tag);
            job.system = Some(system);
            job.element = element;
            job.word = words(word)?;
            job.m = m;
        }
        Cmd::Growth { system, radius } => {
            job.command = Some(Command::Growth);
            job.system = Some(system);
            job.radius = Some(radius);
        }
        Cmd::Suite { name } => {
            job.command = Some(Command::Suite);
            job.suite = Some(name);
        }
        Cmd::Run { job: path } => {
            let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let mut from_file = JobSpec::from_json(&text)?;
            if job.out.is_some() {
                from_file.out = job.out;
            }
            return Ok(from_file);
        }
    }
    Ok(job)
}

fn fill(job: &mut JobSpec, t: Target) -> Result<()> {
    job.system = Some(t.system);
    job.element = t.element;
    job.word = words(t.word)?;
    Ok(())
}

fn run(cli: Cli) -> Result<i32> {
    let job = job_from(cli)?;
    let output = job.run()?;
    match &job.out {
        Some(path) => std::fs::write(path, &output.body).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{}", output.body),
    }
    Ok(output.exit_code)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
