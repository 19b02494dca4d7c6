use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rayon::prelude::*;

use gcdtn_cli::commands::{self, GenerateArgs, MethodChoice, Outcome};
use gcdtn_cli::input::{self, brute_force_order, MAX_ORDER_VAR};
use gcdtn_cli::report::Report;
use gcdtn_cli::{CliError, Exit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Exact analysis of GCD matrices: construction, total nonnegativity,
/// minors, inverses, entrywise transforms and sample generation.
#[derive(Debug, Parser)]
#[command(name = "gcdtn", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the GCD matrix S(X).
    Build {
        /// Positive integers, comma or space separated, or `@file`.
        #[arg(required = true, num_args = 1..)]
        x: Vec<String>,
    },
    /// Decide whether S(X) is totally nonnegative.
    Check {
        /// Positive integers, comma or space separated, or `@file`.
        #[arg(required_unless_present = "batch", conflicts_with = "batch", num_args = 1..)]
        x: Vec<String>,
        /// tn2, cond3, cond4, exponents, green, bruteforce or all.
        #[arg(long, default_value = "all")]
        method: String,
        /// Classify every vector of a file, one per line.
        #[arg(long, value_name = "FILE")]
        batch: Option<PathBuf>,
    },
    /// Compute the minor det S(X)[rows, cols].
    Minor {
        #[arg(required = true, num_args = 1..)]
        x: Vec<String>,
        /// 1-based row indices, increasing.
        #[arg(long)]
        rows: String,
        /// 1-based column indices, increasing.
        #[arg(long)]
        cols: String,
    },
    /// Invert S(X) exactly and verify the product.
    Invert {
        #[arg(required = true, num_args = 1..)]
        x: Vec<String>,
    },
    /// Apply an arithmetic function entrywise and test the result.
    Transform {
        #[arg(required = true, num_args = 1..)]
        x: Vec<String>,
        /// Registered function name, e.g. phi, square, sigma1.
        #[arg(long = "fn", value_name = "NAME")]
        function: String,
    },
    /// Sample a vector with a prescribed verdict.
    Generate {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample a vector whose GCD matrix is not TN.
        #[arg(long)]
        non_tn: bool,
        /// Require distinct entries.
        #[arg(long)]
        distinct: bool,
        /// Number of primes available to TN samples.
        #[arg(long, default_value_t = 2)]
        primes: usize,
        /// Largest exponent per prime in TN samples.
        #[arg(long = "max-exp", default_value_t = 3)]
        max_exponent: u32,
    },
    /// Compare phi(1)...phi(n) with det S((1, ..., n)).
    Smith { n: u64 },
}

/// Brute-force cap for an `n x n` matrix: `None` when the scan is infeasible
/// and no cap is set.
fn optional_order(n: usize) -> Result<Option<usize>, CliError> {
    match std::env::var(MAX_ORDER_VAR) {
        Ok(raw) => brute_force_order(n, Some(&raw)).map(Some),
        Err(_) => Ok(brute_force_order(n, None).ok()),
    }
}

fn method_choice(name: &str) -> Result<MethodChoice, CliError> {
    MethodChoice::parse(name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown method `{name}`; expected tn2, cond3, cond4, exponents, green, bruteforce or all"
        ))
    })
}

fn check_one(xs: &[BigUint], choice: MethodChoice) -> Outcome {
    commands::check(xs, choice, optional_order(xs.len())?)
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    }
}

fn batch_line(line: usize, report: &Report) -> String {
    let verdict = report.to_text();
    let headline = verdict.lines().next().unwrap_or_default();
    let witness = report
        .witness
        .as_ref()
        .filter(|_| headline != "TN")
        .map(|w| format!(" ({})", w.description))
        .unwrap_or_default();
    format!("line {line}: {headline} [{}]{witness}", report.input.join(","))
}

/// Classifies each vector in parallel and prints in input order. The exit
/// code is the most severe one among the lines.
fn batch(path: &PathBuf, choice: MethodChoice, format: Format) -> Result<Exit, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let rows = input::parse_batch(&text)?;
    let outcomes: Vec<(usize, Outcome)> = rows
        .par_iter()
        .map(|(line, xs)| (*line, check_one(xs, choice)))
        .collect();
    let mut worst = Exit::Success;
    for (line, outcome) in outcomes {
        match outcome {
            Ok((report, exit)) => {
                match format {
                    Format::Text => println!("{}", batch_line(line, &report)),
                    Format::Json => println!("{}", report.to_json()),
                }
                worst = worst.max(exit);
            }
            Err(e) => {
                eprintln!("error: line {line}: {e}");
                worst = worst.max(e.exit());
            }
        }
    }
    Ok(worst)
}

fn run(cli: Cli) -> Result<Exit, CliError> {
    let outcome = match cli.command {
        Command::Build { x } => commands::build(&input::parse_vector(&x)?),
        Command::Check { x, method, batch: file } => {
            let choice = method_choice(&method)?;
            if let Some(path) = file {
                return batch(&path, choice, cli.format);
            }
            check_one(&input::parse_vector(&x)?, choice)
        }
        Command::Minor { x, rows, cols } => commands::minor_cmd(
            &input::parse_vector(&x)?,
            &input::parse_indices(&rows)?,
            &input::parse_indices(&cols)?,
        ),
        Command::Invert { x } => commands::invert_cmd(&input::parse_vector(&x)?),
        Command::Transform { x, function } => {
            let xs = input::parse_vector(&x)?;
            let order = input::env_brute_force_order(xs.len())?;
            commands::transform(&xs, &function, order)
        }
        Command::Generate {
            n,
            seed,
            non_tn,
            distinct,
            primes,
            max_exponent,
        } => {
            let args = GenerateArgs {
                n,
                seed,
                non_tn,
                distinct,
                primes,
                max_exponent,
            };
            commands::generate(args, optional_order(n)?)
        }
        Command::Smith { n } => commands::smith(n),
    };
    let (report, exit) = outcome?;
    println!("{}", render(&report, cli.format));
    Ok(exit)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exit = run(cli).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.exit()
    });
    ExitCode::from(exit.code())
}
