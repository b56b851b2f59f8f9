use clap::{Parser, Subcommand, ValueEnum};
use cobtower_cli::commands::{
    cmd_run, cmd_selftest, cmd_table, cmd_verify_congruences, cmd_verify_generators,
    parse_primes, table_tsv,
};
use cobtower_cli::report::Report;
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact characteristic numbers of towers of projective bundles and the
/// number theory behind the cobordism generator criterion.
#[derive(Parser)]
#[command(name = "cobtower", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a .tow script and report each command's value.
    Run {
        file: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the a(i, j) table with engine diagnostics.
    Table {
        #[arg(long, default_value_t = 12)]
        max_degree: u32,
        /// Largest i + j recomputed through the blow-up engine.
        #[arg(long, default_value_t = 12)]
        engine_cap: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the generator criterion degree by degree.
    VerifyGenerators {
        #[arg(long, default_value_t = 30)]
        max_degree: u32,
        #[arg(long, default_value_t = 12)]
        engine_cap: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the binomial congruence lemmas.
    VerifyCongruences {
        /// Comma-separated primes.
        #[arg(long, default_value = "2,3,5,7,11,13")]
        primes: String,
        #[arg(long, default_value_t = 3)]
        max_s: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in battery of frozen checks.
    Selftest {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn finish(report: Report, rendered: Option<String>, out: Option<PathBuf>) -> ExitCode {
    let text = rendered.unwrap_or_else(|| report.canonical_json());
    if let Err(e) = emit(&text, out.as_ref()) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    eprintln!("# {} finished in {} ms", report.command, report.timing_ms);
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Cmd::Run { file, out } => {
            let source = match std::fs::read_to_string(&file) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", file.display());
                    return ExitCode::from(2);
                }
            };
            match cmd_run(&source, &file.display().to_string()) {
                Ok(report) => finish(report, None, out),
                Err(e) => {
                    eprintln!("error: {}: {e}", file.display());
                    ExitCode::from(2)
                }
            }
        }
        Cmd::Table {
            max_degree,
            engine_cap,
            format,
            out,
        } => {
            let report = cmd_table(max_degree, engine_cap);
            let rendered = match format {
                Format::Json => None,
                Format::Tsv => Some(table_tsv(&report)),
            };
            finish(report, rendered, out)
        }
        Cmd::VerifyGenerators {
            max_degree,
            engine_cap,
            out,
        } => {
            if max_degree < 2 {
                eprintln!("error: --max-degree must be at least 2");
                return ExitCode::from(2);
            }
            finish(cmd_verify_generators(max_degree, engine_cap), None, out)
        }
        Cmd::VerifyCongruences { primes, max_s, out } => match parse_primes(&primes) {
            Ok(primes) => finish(cmd_verify_congruences(&primes, max_s), None, out),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Cmd::Selftest { out } => finish(cmd_selftest(), None, out),
    }
}
