use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use cuspcalc::cusp::Family;
use cuspcalc::mmp::Variant;
use cuspcalc::search::{SearchBounds, SUPERSET_BANNER};
use cuspcalc_cli::{
    emit_dot_all, fiber_witness_all, param_verify, parse_range, render, replay_all, search_cmd, select_specs,
    verify_table, Outcome,
};

/// Reproducible verification runs for rational cuspidal curve families.
#[derive(Parser)]
#[command(name = "cuspcalc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Directory for report files; reports go to stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Args, Clone)]
struct Select {
    /// Restrict to one family (Q3, Q4, FE, FZ2, H, I, J).
    #[arg(long)]
    family: Option<Family>,
    /// A single parameter value (γ or k).
    #[arg(long, conflicts_with = "param_range")]
    param: Option<u64>,
    /// An inclusive parameter range `A..B`.
    #[arg(long)]
    param_range: Option<String>,
}

impl Select {
    fn params(&self) -> Result<Option<Vec<u64>>> {
        match (&self.param, &self.param_range) {
            (Some(p), _) => Ok(Some(vec![*p])),
            (None, Some(r)) => parse_range(r).map(Some),
            (None, None) => Ok(None),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Degree, −E², HN conversions and K·(K+D) for every selected type.
    VerifyTable(Select),
    /// Scripted almost-minimalization and minimal-model data.
    Replay {
        #[command(flatten)]
        select: Select,
        #[arg(long)]
        variant: Option<Variant>,
    },
    /// Fiber classes certifying κ(K + ½D) = −∞.
    FiberWitness(Select),
    /// Certificates for the built-in parameterized curves.
    ParamVerify {
        #[arg(long)]
        family: Option<Family>,
    },
    /// Necessary-condition enumeration of cusp profiles.
    Search {
        #[arg(long, default_value_t = 9)]
        max_degree: u64,
        #[arg(long, default_value_t = 40)]
        max_hn: u64,
        /// Only cusps with multiplicity sequence (2,…,2).
        #[arg(long)]
        semi_ordinary: bool,
    },
    /// DOT files for every stage of each replay (into --out, default `dot`).
    EmitDot {
        #[command(flatten)]
        select: Select,
        #[arg(long)]
        variant: Option<Variant>,
    },
}

impl Command {
    fn file_stem(&self) -> &'static str {
        match self {
            Command::VerifyTable(_) => "verify_table",
            Command::Replay { .. } => "replay",
            Command::FiberWitness(_) => "fiber_witness",
            Command::ParamVerify { .. } => "param_verify",
            Command::Search { .. } => "search",
            Command::EmitDot { .. } => "emit_dot",
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let specs = |s: &Select| -> Result<_> { Ok(select_specs(s.family, s.params()?.as_deref())) };
    match &cli.command {
        Command::VerifyTable(s) => verify_table(&specs(s)?),
        Command::Replay { select, variant } => replay_all(&specs(select)?, *variant),
        Command::FiberWitness(s) => fiber_witness_all(&specs(s)?),
        Command::ParamVerify { family } => param_verify(*family),
        Command::Search { max_degree, max_hn, semi_ordinary } => {
            eprintln!("{SUPERSET_BANNER}");
            search_cmd(&SearchBounds { max_degree: *max_degree, max_hn: *max_hn, semi_ordinary_only: *semi_ordinary })
        }
        Command::EmitDot { select, variant } => {
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("dot"));
            emit_dot_all(&specs(select)?, *variant, &dir)
        }
    }
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the thread pool")?;
    }
    let outcome = run(&cli)?;
    let text = render(&outcome.report)?;
    match &cli.out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let path = dir.join(format!("{}.json", cli.command.file_stem()));
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(if outcome.ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
