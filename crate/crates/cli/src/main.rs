use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use tauglue::algebra::{BasedAlgebra, DEFAULT_LENGTH_CAP};
use tauglue::io::report::{self, Tabular};
use tauglue::io::{module_from_json, parse_algebra_file, parse_module_literal, recollement_from_json, AlgebraFile};
use tauglue::recollement::{default_samples, glue_table, verify_recollement, Recollement};
use tauglue::taumod::{enumerate_stt, DEFAULT_CAP};
use tauglue::Error;

/// Support tau-tilting modules, semibricks and idempotent recollements.
#[derive(Parser)]
#[command(name = "tauglue", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format; `dot` is only available for `stt`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest number of support tau-tilting pairs to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an algebra file and report the algebra and its idempotent data.
    Check { file: PathBuf },
    /// Enumerate the support tau-tilting pairs by mutation.
    Stt { file: PathBuf },
    /// Glue the support tau-tilting pairs of the two outer algebras.
    Glue {
        file: PathBuf,
        /// Glue semibricks only, without enumerating the middle algebra.
        #[arg(long)]
        semibricks_only: bool,
    },
    /// Check the recollement identities on sample modules. Also accepts a
    /// recollement JSON dump in place of an algebra file.
    Verify { file: PathBuf },
    /// Translate of a module, with rigidity and brick verdicts.
    Tau {
        file: PathBuf,
        /// `P<v>`, `I<v>`, `S<v>` or the path of a module JSON file.
        #[arg(long)]
        module: String,
    },
}

/// A failed run: message and exit code.
struct Failure(String, u8);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e == Error::IncompleteGraph { 2 } else { 1 };
        Failure(e.to_string(), code)
    }
}

type Outcome = Result<(String, u8), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display()), 1))
}

fn load(path: &Path) -> Result<(AlgebraFile, Arc<BasedAlgebra>), Failure> {
    let file = parse_algebra_file(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display()), 1))?;
    let algebra = file.build(DEFAULT_LENGTH_CAP)?;
    Ok((file, algebra))
}

fn recollement(file: &AlgebraFile, algebra: &Arc<BasedAlgebra>) -> Result<Recollement, Failure> {
    let subset =
        file.idempotent_vertices().ok_or_else(|| Failure("algebra file has no 'idempotent' line".into(), 1))?;
    Ok(Recollement::new(algebra, &subset)?)
}

fn render<T: Tabular>(report: &T, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => Ok(report::to_json(report)),
        Format::Csv => Ok(report::to_csv(report)),
        Format::Dot => Err(Failure("--format dot is only available for stt".into(), 1)),
    }
}

fn run(cli: &Cli) -> Outcome {
    let format = cli.format;
    match &cli.command {
        Command::Check { file } => {
            let (f, a) = load(file)?;
            Ok((render(&report::check_report(&f, &a)?, format)?, 0))
        }
        Command::Stt { file } => {
            let (_, a) = load(file)?;
            let graph = enumerate_stt(&a, cli.cap)?;
            let rep = report::stt_report(&graph, cli.cap)?;
            let text = match format {
                Format::Dot => report::stt_to_dot(&rep),
                _ => render(&rep, format)?,
            };
            Ok((text, if rep.complete { 0 } else { 2 }))
        }
        Command::Glue { file, semibricks_only } => {
            let (f, a) = load(file)?;
            let rec = recollement(&f, &a)?;
            let table = glue_table(&rec, cli.cap, *semibricks_only)?;
            Ok((render(&report::glue_report(&rec, &table, cli.cap)?, format)?, 0))
        }
        Command::Verify { file } => {
            let text = read(file)?;
            let rec = if text.trim_start().starts_with('{') {
                recollement_from_json(&text)?
            } else {
                let (f, a) = load(file)?;
                recollement(&f, &a)?
            };
            // Samples are built from the outer algebras, which are checked
            // separately, so that corrupted gluing data still yields a report.
            let samples = default_samples(&rec, cli.cap)?;
            let rep = report::verify_report(&rec, &verify_recollement(&rec, &samples), cli.cap);
            Ok((render(&rep, format)?, if rep.passed { 0 } else { 3 }))
        }
        Command::Tau { file, module } => {
            let (_, a) = load(file)?;
            let m = match parse_module_literal(&a, module) {
                Ok(m) => m,
                Err(e) if !Path::new(module).is_file() => return Err(e.into()),
                Err(_) => module_from_json(&a, &read(Path::new(module))?)?,
            };
            Ok((render(&report::tau_report(module, &m)?, format)?, 0))
        }
    }
}

fn main() -> ExitCode {
    // Usage errors exit with 1 so that 2 keeps meaning "cap reached".
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (text, code) = match run(&cli) {
        Ok(x) => x,
        Err(Failure(msg, code)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(code);
        }
    };
    let written = match &cli.out {
        Some(p) => std::fs::write(p, &text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if code == 2 {
        eprintln!("error: enumeration cap of {} reached; report is incomplete", cli.cap);
    } else if code == 3 {
        eprintln!("error: recollement verification failed");
    }
    ExitCode::from(code)
}
