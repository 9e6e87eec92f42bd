//! Batch front end for the cHTN numerics library.
//!
//! Subcommands read a line-oriented `key = value` config file, compute, and
//! emit a human-readable report plus tab-separated data files. Identical
//! config and seed produce byte-identical data files.

mod commands;
mod config;
mod errors;
mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::CommandIo;
use config::{ConfigDoc, DEFAULT_OUT_DIR, DEFAULT_SEED, OUT_DIR_ENV};
use errors::{CliError, CliResult};

#[derive(Parser)]
#[command(
    name = "chtn",
    about = "Statistical-weight, imaginary-time path, and de Sitter cosmological-constant numerics",
    version
)]
struct Cli {
    /// Line-oriented `key = value` config file with `#` comments.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// RNG seed; overrides the config key (default 42).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output directory; overrides CHTN_OUT_DIR and the config key.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for Monte Carlo batches (default: all cores).
    /// Results are byte-identical across worker counts.
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Statistical weight W, site probability p, and finite-n residuals.
    Weight,
    /// Network entropy, classicalized action, tensions, central charges.
    Chtn,
    /// Kernel estimate, event readout, and probabilities for one trajectory.
    Paths,
    /// Center-of-mass reduction and common-factor modification.
    ManyBody,
    /// Margolus-Levitin time, lambda estimate, and observed-value inversion.
    Cosmology,
    /// Aggregate headline numbers of previous runs.
    Report,
}

impl Command {
    fn keys(&self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            Command::Weight => (commands::weight::KEYS, &[]),
            Command::Chtn => (commands::chtn_state::KEYS, &[]),
            Command::Paths => (commands::paths::KEYS, &[]),
            Command::ManyBody => (commands::many_body::KEYS, commands::many_body::REPEATABLE),
            Command::Cosmology => (commands::cosmology::KEYS, &[]),
            Command::Report => (commands::report::KEYS, &[]),
        }
    }
}

fn execute(cli: &Cli) -> CliResult<Vec<String>> {
    let text = match &cli.config {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?,
        None => String::new(),
    };
    let (keys, repeatable) = cli.command.keys();
    let doc = ConfigDoc::parse(&text, keys, repeatable)?;

    let seed = match cli.seed {
        Some(s) => s,
        None => {
            let p = config::Params::new(&doc);
            p.u64("seed", DEFAULT_SEED)?
        }
    };
    let out_dir = cli
        .out
        .clone()
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .or_else(|| doc.get("out").map(|e| PathBuf::from(&e.value)))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));
    let workers = match cli.workers {
        Some(w) => Some(w),
        None => doc
            .get("workers")
            .map(|e| {
                e.value.parse::<usize>().map_err(|_| {
                    CliError::config_at(e.line, format!("workers: invalid count '{}'", e.value))
                })
            })
            .transpose()?,
    };

    let io = CommandIo {
        out_dir: &out_dir,
        seed,
    };
    let run = || -> CliResult<Vec<String>> {
        match cli.command {
            Command::Weight => commands::weight::run(&doc, &io),
            Command::Chtn => commands::chtn_state::run(&doc, &io),
            Command::Paths => commands::paths::run(&doc, &io),
            Command::ManyBody => commands::many_body::run(&doc, &io),
            Command::Cosmology => commands::cosmology::run(&doc, &io),
            Command::Report => commands::report::run(&doc, &io),
        }
    };

    match workers {
        None => run(),
        Some(w) => {
            if w == 0 {
                return Err(CliError::config("workers must be at least 1"));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| CliError::config(format!("worker pool: {e}")))?;
            pool.install(run)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(files) => {
            for f in files {
                println!("wrote {f}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
