use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gysin_core::job::{run_job, run_oracle, GeometryDraft};
use gysin_core::oracle::{grassmannian_degree, lagrangian_degree, quadric_degree};
use gysin_core::{JobDraft, JobSpec, Result};

/// Gysin pushforwards along flag bundles, computed exactly.
#[derive(Parser)]
#[command(name = "gysin", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the closed-form pushforward of a job.
    Compute(JobArgs),
    /// Evaluate the job step by step along the projective-bundle tower (type A only).
    Oracle(JobArgs),
    /// Run both evaluations and report where they differ.
    Check(JobArgs),
    /// Classical enumerative degrees.
    #[command(subcommand)]
    Degree(DegreeCommand),
}

#[derive(Subcommand)]
enum DegreeCommand {
    /// Degree of the Grassmannian of d-planes in an n-dimensional space.
    Grassmannian { d: usize, n: usize },
    /// Degree of the Lagrangian Grassmannian LG(n, 2n).
    Lagrangian { n: usize },
    /// Degree of a smooth quadric in P^(rank-1).
    Quadric { rank: usize },
}

#[derive(Args)]
struct JobArgs {
    /// Job file (TOML, or JSON when the extension is .json). Inline flags override it.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// One of A, C, BD, KL_A, KL_C.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Rank of the orthogonal bundle (BD only).
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    mu: Option<Vec<u32>>,
    /// formal or zero.
    #[arg(long)]
    twist: Option<String>,
    /// formal or trivial.
    #[arg(long)]
    base: Option<String>,
    /// The class to push forward, e.g. "(x1+x2)^4".
    #[arg(long)]
    f: Option<String>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    halve: Option<bool>,
    /// Drop every output class of grade above this bound.
    #[arg(long)]
    cutoff: Option<u32>,
    /// text or structured.
    #[arg(long)]
    format: Option<String>,
}

impl JobArgs {
    fn into_spec(self) -> Result<JobSpec> {
        let mut draft = match &self.input {
            Some(path) => JobDraft::from_file(path)?,
            None => JobDraft::default(),
        };
        draft.overlay(JobDraft {
            geometry: GeometryDraft {
                family: self.family,
                n: self.n,
                rank: self.rank,
                dims: self.dims,
                mu: self.mu,
                twist: self.twist,
                base: self.base,
            },
            f: self.f,
            halve: self.halve,
            cutoff: self.cutoff,
            format: self.format,
        });
        draft.finish()
    }
}

/// Output text and whether the run counts as a success.
fn run(cli: Cli) -> Result<(String, bool)> {
    match cli.command {
        Command::Compute(args) => Ok((run_job(&args.into_spec()?)?, true)),
        Command::Oracle(args) => Ok((run_oracle(&args.into_spec()?)?, true)),
        Command::Check(args) => {
            let spec = args.into_spec()?;
            let report = spec.check()?;
            Ok((report.render(spec.format), report.diffs() == 0))
        }
        Command::Degree(which) => {
            let value = match which {
                DegreeCommand::Grassmannian { d, n } => grassmannian_degree(d, n)?,
                DegreeCommand::Lagrangian { n } => lagrangian_degree(n)?,
                DegreeCommand::Quadric { rank } => quadric_degree(rank)?,
            };
            Ok((format!("{value}\n"), true))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(2)
        }
    }
}
