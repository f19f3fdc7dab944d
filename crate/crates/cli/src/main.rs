//! Command-line frontend: reads presentation files, dispatches computations,
//! and emits deterministic text or structured (JSON) reports.
//!
//! Exit codes: 0 success (all checks pass), 1 a verification failed,
//! 2 input parsing error, 3 semantic error, 4 budget exceeded.

mod commands;
mod report;

use clap::{Parser, Subcommand, ValueEnum};
use commands::{CliError, VerifyParams};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Leibniz,
    Desideratum,
    Product,
    Localization,
    BaseChange,
    FirstSequence,
    Dilation,
    Functoriality,
    Truncation,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Leibniz => "leibniz",
            Check::Desideratum => "desideratum",
            Check::Product => "product",
            Check::Localization => "localization",
            Check::BaseChange => "base-change",
            Check::FirstSequence => "first-sequence",
            Check::Dilation => "dilation",
            Check::Functoriality => "functoriality",
            Check::Truncation => "truncation",
        }
    }
}

#[derive(Parser)]
#[command(
    name = "jetalg",
    version,
    about = "Jet algebras of finitely presented rings: construction and exact verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the jet presentation of the input at order m.
    Jet {
        file: PathBuf,
        #[arg(short = 'm', long = "m")]
        m: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a named verification and report PASS/FAIL per assertion.
    Verify {
        check: Check,
        file: PathBuf,
        #[arg(long)]
        q: Option<u64>,
        #[arg(short = 'm', long = "m")]
        m: Option<u32>,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long)]
        j: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count points over a prime field, optionally of a jet or a fiber.
    Count {
        file: PathBuf,
        #[arg(long)]
        q: u64,
        #[arg(short = 'm', long = "m")]
        m: Option<u32>,
        /// Fiber over a base point, e.g. x=0,y=0
        #[arg(long)]
        fiber: Option<String>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Dilation orbit data on a jet fiber.
    Orbits {
        file: PathBuf,
        #[arg(long)]
        q: u64,
        #[arg(short = 'm', long = "m")]
        m: Option<u32>,
        #[arg(long)]
        fiber: String,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Induced map on jet spaces and its point-level image.
    Induced {
        file: PathBuf,
        /// Generator image, e.g. "x -> x^2" (repeatable)
        #[arg(long = "map", required = true)]
        maps: Vec<String>,
        #[arg(long)]
        q: u64,
        #[arg(short = 'm', long = "m")]
        m: u32,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Leading form of a function vanishing to order >= m along a subvariety.
    LeadingForm {
        file: PathBuf,
        /// The function, as an expression in the presentation's variables
        #[arg(long)]
        b: String,
        /// Comma-separated variables cutting out E, e.g. x,y
        #[arg(long = "E")]
        e_vars: String,
        #[arg(short = 'm', long = "m")]
        m: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn emit<T: Serialize>(report: &T, text: String, format: Format) -> String {
    match format {
        Format::Text => text,
        Format::Structured => {
            serde_json::to_string_pretty(report).expect("reports serialize") + "\n"
        }
    }
}

fn run(cli: Cli) -> Result<(String, ExitCode), CliError> {
    let budget_or = |b: Option<u64>| b.map(u128::from).unwrap_or(jetalg::oracle::DEFAULT_BUDGET);
    match cli.command {
        Command::Jet { file, m, format } => {
            let report = commands::cmd_jet(&file, m)?;
            Ok((emit(&report, report.render_text(), format), ExitCode::SUCCESS))
        }
        Command::Verify { check, file, q, m, i, j, seed, budget, format } => {
            let params = VerifyParams { q, m, i, j, seed, budget: budget_or(budget) };
            let (report, ok) = commands::cmd_verify(check.name(), &file, &params)?;
            let code = if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
            Ok((emit(&report, report.render_text(), format), code))
        }
        Command::Count { file, q, m, fiber, budget, format } => {
            let report = commands::cmd_count(&file, q, m, fiber.as_deref(), budget_or(budget))?;
            Ok((emit(&report, report.render_text(), format), ExitCode::SUCCESS))
        }
        Command::Orbits { file, q, m, fiber, budget, format } => {
            let report = commands::cmd_orbits(&file, q, m, &fiber, budget_or(budget))?;
            Ok((emit(&report, report.render_text(), format), ExitCode::SUCCESS))
        }
        Command::Induced { file, maps, q, m, budget, format } => {
            let report = commands::cmd_induced(&file, &maps, q, m, budget_or(budget))?;
            Ok((emit(&report, report.render_text(), format), ExitCode::SUCCESS))
        }
        Command::LeadingForm { file, b, e_vars, m, format } => {
            let report = commands::cmd_leading_form(&file, &b, &e_vars, m)?;
            Ok((emit(&report, report.render_text(), format), ExitCode::SUCCESS))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((output, code)) => {
            print!("{output}");
            code
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit_code)
        }
    }
}
