use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qkdiff_cli::commands::{run_check, run_generate, run_report, CheckArgs, GenerateArgs, Rendered, ReportArgs};
use qkdiff_cli::{exit, CliError};

/// Exact q-difference calculus: generate series and run verification checks.
#[derive(Parser)]
#[command(name = "qkdiff", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated series as a JSON document.
    Generate(GenerateArgs),
    /// Run one named check and write its report.
    Check(CheckArgs),
    /// Run a suite of checks and write the aggregate report.
    Report(ReportArgs),
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit(r: Rendered, out: Option<&Path>, json_only: bool) -> Result<u8, CliError> {
    if !json_only {
        let mut stdout = std::io::stdout().lock();
        for line in &r.human {
            writeln!(stdout, "{line}")?;
        }
    }
    write_out(out, &r.json)?;
    Ok(r.code)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Generate(args) => {
            let json = run_generate(&args)?;
            write_out(args.out.as_deref(), &json)?;
            Ok(exit::PASS)
        }
        Command::Check(args) => emit(run_check(&args)?, args.output.out.as_deref(), args.output.json_only),
        Command::Report(args) => emit(run_report(&args)?, args.output.out.as_deref(), args.output.json_only),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("qkdiff: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
