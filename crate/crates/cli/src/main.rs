use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use padic_qm_cli::commands::{self, CounterexampleKind, Failure, Params};

/// Exact operator calculus over Q_p(sqrt mu), emitting JSON reports.
#[derive(Parser, Debug)]
#[command(name = "padic-qm", version)]
struct Cli {
    /// The prime p.
    #[arg(long, global = true)]
    p: Option<u64>,
    /// A non-square integer mu.
    #[arg(long, global = true, allow_hyphen_values = true)]
    mu: Option<i64>,
    /// Significant base-p digits carried by each number.
    #[arg(long, global = true, default_value_t = 10)]
    precision: u32,
    /// Selects among the solutions of bounded searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Threads for batch classification.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Square classes, ramification and isotropy index of Q_p(sqrt mu).
    Field,
    /// Both square roots of an integer or fraction in Q_p.
    Sqrt {
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    /// Per-property verdicts for one or more operator files.
    Classify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// The trace, with the bound on omitted terms for generators.
    Trace { file: PathBuf },
    /// Canonical decomposition, or the symmetric one with --symmetric.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        symmetric: bool,
    },
    /// Unitarity, inner-product preservation and norm of a block operator.
    UnitaryCheck { file: PathBuf },
    /// The distribution {tr(A_i S)} of a state S on a SOVM.
    Pair { sovm: PathBuf, state: PathBuf },
    /// Builds one of the unitarity examples.
    Counterexample {
        #[arg(long, value_enum, default_value_t = CounterexampleKind::FourSquares)]
        kind: CounterexampleKind,
        /// The exponent K in x1^2 + x2^2 + x3^2 + x4^2 = p^(2K).
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Emit only the operator, ready for the other subcommands.
        #[arg(long)]
        operator_only: bool,
    },
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let params = Params { p: cli.p, mu: cli.mu, precision: cli.precision, seed: cli.seed, jobs: cli.jobs };
    let value = match &cli.command {
        Command::Field => commands::field(&params),
        Command::Sqrt { value } => commands::sqrt(&params, value),
        Command::Classify { files } => commands::classify(&params, files),
        Command::Trace { file } => commands::trace(&params, file),
        Command::Decompose { file, symmetric } => commands::decompose(&params, file, *symmetric),
        Command::UnitaryCheck { file } => commands::unitary_check(&params, file),
        Command::Pair { sovm, state } => commands::pair_files(&params, sovm, state),
        Command::Counterexample { kind, k, operator_only } => {
            commands::counterexample(&params, *kind, *k, *operator_only)
        }
    }?;
    // serde_json's map is ordered by key, which gives sorted output
    let mut text = serde_json::to_string_pretty(&value).map_err(|e| Failure::Parse(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    let text = match run(&cli) {
        Ok(text) => text,
        Err(failure) => {
            eprintln!("{}", failure.message());
            return ExitCode::from(failure.exit_code());
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error[io]: {msg}");
            ExitCode::from(3)
        }
    }
}
