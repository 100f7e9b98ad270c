use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use lmx_cli::commands::{exit_status, run_checks, run_command, Command, Options};
use lmx_cli::format::{format_report, Mode};
use lmx_cli::problem::parse_problem_file;
use lmx_cli::CliError;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    Eval,
    Converge,
    Validate,
    VerifyIntegral,
    VerifyPde,
    Necessity,
    /// Run the commands listed in the file's `checks`.
    Run,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Jsonl,
}

/// Evaluate and cross-check matrix hypergeometric functions.
#[derive(Debug, Parser)]
#[command(name = "lmx", version)]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    problem: PathBuf,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Truncation degree K; also the coefficient degree cap for verify-pde
    /// and necessity (default 6 there).
    #[arg(long)]
    max_degree: Option<usize>,
    /// Quadrature level (default from the file, else 8).
    #[arg(long)]
    quad_level: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn run(args: &Args) -> Result<i32, CliError> {
    let problem = parse_problem_file(&args.problem)?;
    let options = Options {
        seed: args.seed,
        max_degree: args.max_degree,
        quad_level: args.quad_level,
    };
    let out = match args.command {
        Cmd::Eval => run_command(Command::Eval, &problem, &options),
        Cmd::Converge => run_command(Command::Converge, &problem, &options),
        Cmd::Validate => run_command(Command::Validate, &problem, &options),
        Cmd::VerifyIntegral => run_command(Command::VerifyIntegral, &problem, &options),
        Cmd::VerifyPde => run_command(Command::VerifyPde, &problem, &options),
        Cmd::Necessity => run_command(Command::Necessity, &problem, &options),
        Cmd::Run => run_checks(&problem, &options),
    }?;
    let mode = match args.format {
        Format::Text => Mode::Text,
        Format::Jsonl => Mode::JsonLines,
    };
    print!("{}", format_report(&out, mode));
    Ok(exit_status(&out.report))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let code = run(&args).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.exit_code()
    });
    ExitCode::from(code as u8)
}
