use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lrcreal::cli::{eval_command, fib_command, selftest_command, OutputFormat};
use lrcreal::engine::ConsumeTable;

#[derive(Parser)]
#[command(name = "lrcreal", version, about = "Exact real arithmetic with L/R/C digit streams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Digits,
    Interval,
    Decimal,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression such as `avg(1/3, 1/6)`.
    Eval {
        expr: String,
        #[arg(long, default_value_t = 32)]
        digits: usize,
        #[arg(long, value_enum, default_value_t = Format::Digits)]
        format: Format,
        #[arg(long, default_value_t = 10)]
        decimals: usize,
    },
    /// Check random conversions and affine combinations against exact rationals.
    Selftest {
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value_t = 40)]
        depth: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Run with a deliberately corrupted consumption table.
        #[arg(long, hide = true)]
        inject_rc_typo: bool,
    },
    /// Print the Fibonacci stream and its property checks.
    Fib {
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Eval {
            expr,
            digits,
            format,
            decimals,
        } => {
            let format = match format {
                Format::Digits => OutputFormat::Digits,
                Format::Interval => OutputFormat::Interval,
                Format::Decimal => OutputFormat::Decimal,
            };
            match eval_command(&expr, digits, format, decimals) {
                Ok(out) => {
                    println!("{out}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
        Command::Selftest {
            cases,
            depth,
            seed,
            inject_rc_typo,
        } => {
            let table = if inject_rc_typo {
                ConsumeTable::SwappedRc
            } else {
                ConsumeTable::Correct
            };
            let report = selftest_command(cases, depth, seed, table);
            println!("{}", report.text);
            ExitCode::from(report.exit_code() as u8)
        }
        Command::Fib { count } => {
            println!("{}", fib_command(count));
            ExitCode::SUCCESS
        }
    }
}
