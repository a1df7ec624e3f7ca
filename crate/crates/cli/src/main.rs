use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use convkit::doc::{canonicalize, DocKind};
use convkit::suites::{self, Options, Suite, SuiteReport};

#[derive(Parser)]
#[command(name = "convkit", version, about = "Finite convergence spaces and vector lattice convergence checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Default)]
struct Flags {
    /// Carrier size or dimension bound.
    #[arg(long)]
    size: Option<usize>,
    /// Seed for random corpora.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    bounds_index: Option<usize>,
    #[arg(long)]
    bounds_family: Option<usize>,
    /// Number of terms (typewriter: the horizon N).
    #[arg(long)]
    terms: Option<u64>,
    #[arg(long)]
    samples: Option<u64>,
    /// Write the report as JSON to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Flags {
    fn options(&self) -> Options {
        Options {
            size: self.size,
            seed: self.seed,
            bounds_index: self.bounds_index,
            bounds_family: self.bounds_family,
            terms: self.terms,
            samples: self.samples,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SubseqArg {
    Pow2,
}

#[derive(Subcommand)]
enum Command {
    /// Count convergence structures on `--size` points.
    Enumerate {
        /// Print every structure with its classification.
        #[arg(long)]
        classify: bool,
        #[command(flatten)]
        flags: Flags,
    },
    /// Run a named verification suite.
    Verify {
        suite: String,
        #[command(flatten)]
        flags: Flags,
    },
    /// Measures, recurrence and subsequence exits of the typewriter sequence.
    Typewriter {
        #[arg(long, value_enum, default_value = "pow2")]
        subseq: SubseqArg,
        #[command(flatten)]
        flags: Flags,
    },
    /// Canonicalize a document, or run the roundtrip suite when no file is given.
    Roundtrip {
        file: Option<PathBuf>,
        #[command(flatten)]
        flags: Flags,
    },
}

fn finish(report: SuiteReport, out: Option<&PathBuf>) -> Result<ExitCode> {
    println!("{report}");
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(&report)?;
        std::fs::write(path, json + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Enumerate { classify, flags } => {
            let n = flags.size.unwrap_or(3);
            finish(suites::enumerate(n, classify)?, flags.out.as_ref())
        }
        Command::Verify { suite, flags } => {
            let s = Suite::parse(&suite)?;
            finish(suites::run(s, &flags.options())?, flags.out.as_ref())
        }
        Command::Typewriter { subseq: SubseqArg::Pow2, flags } => {
            finish(suites::run(Suite::Typewriter, &flags.options())?, flags.out.as_ref())
        }
        Command::Roundtrip { file: Some(path), flags } => {
            let name = path.to_string_lossy();
            let Some(kind) = DocKind::from_path(&name) else {
                bail!("{name}: unrecognized document suffix");
            };
            let text = std::fs::read_to_string(&path).with_context(|| format!("reading {name}"))?;
            let canonical = canonicalize(kind, &text).with_context(|| format!("parsing {name}"))?;
            match &flags.out {
                Some(out) => std::fs::write(out, &canonical).with_context(|| format!("writing {}", out.display()))?,
                None => print!("{canonical}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Roundtrip { file: None, flags } => {
            finish(suites::run(Suite::Roundtrip, &flags.options())?, flags.out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
