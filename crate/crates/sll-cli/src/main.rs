use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sll_cli::commands::{self, CliResult, TraceOptions};
use sll_cli::{default_manifest, load_corpus, worker_count, Format};
use sll_reducer::Strategy;

#[derive(Parser)]
#[command(name = "sllpi", version, about = "Soft-linear session-typed pi-calculus toolkit")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value = "csv")]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pick {
    First,
    Random,
}

#[derive(clap::Args, Clone)]
struct TraceArgs {
    #[arg(long, value_enum, default_value = "first")]
    strategy: Pick,
    /// Seed for the random strategy.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    max_steps: u64,
    /// Write one CSV row per step: index, rule, wei, dupf, size.
    #[arg(long)]
    emit_trace: Option<PathBuf>,
}

impl TraceArgs {
    fn options(&self) -> TraceOptions {
        let strategy = match self.strategy {
            Pick::First => Strategy::First,
            Pick::Random => Strategy::Random(self.seed),
        };
        TraceOptions { strategy, max_steps: self.max_steps, emit_trace: self.emit_trace.clone() }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Type-check a .thm file against its declared judgment.
    Check { file: PathBuf },
    /// Print the process underlying a proof term.
    Extract { file: PathBuf },
    /// Size, box depth, duplicability factor, weight and judgment depth.
    Analyze {
        files: Vec<PathBuf>,
        /// Analyse every typable proof in this manifest instead.
        #[arg(long, conflicts_with = "files")]
        corpus: Option<PathBuf>,
    },
    /// Reduce a proof term, mirroring each process step by proof rewriting.
    Reduce {
        file: PathBuf,
        #[command(flatten)]
        trace: TraceArgs,
    },
    /// Reduce an untyped .pi process.
    Run {
        file: PathBuf,
        #[command(flatten)]
        trace: TraceArgs,
    },
    /// Run the duplicating-server family.
    Blowup {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "first")]
        strategy: Pick,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a full trace against the polynomial bound.
    Certify { file: PathBuf },
    /// Run the whole corpus; workers from SLLPI_WORKERS.
    Corpus {
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
}

fn dispatch(cli: Cli) -> CliResult {
    let f = cli.format;
    match cli.cmd {
        Cmd::Check { file } => commands::check_file(&file),
        Cmd::Extract { file } => commands::extract_file(&file),
        Cmd::Analyze { files, corpus } => match corpus {
            Some(m) => commands::analyze_corpus(&load_corpus(&m)?, f),
            None if files.is_empty() => commands::analyze_corpus(&load_corpus(&default_manifest())?, f),
            None => commands::analyze_files(&files, f),
        },
        Cmd::Reduce { file, trace } => commands::reduce_file(&file, &trace.options(), f),
        Cmd::Run { file, trace } => commands::run_file(&file, &trace.options(), f),
        Cmd::Blowup { n, strategy, seed } => {
            let s = match strategy {
                Pick::First => Strategy::First,
                Pick::Random => Strategy::Random(seed),
            };
            commands::blowup(n, s, f)
        }
        Cmd::Certify { file } => commands::certify_file(&file, f),
        Cmd::Corpus { manifest } => commands::corpus(&manifest.unwrap_or_else(default_manifest), f, worker_count()),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::FAILURE
        }
    }
}
