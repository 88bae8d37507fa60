use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use adelcap::cli::{exit_code, report, run_document, scenario::SCHEMA, selftest, RunOptions};

#[derive(Parser)]
#[command(name = "adelcap", version, about = "Capacities of adelic polydisks and Green's matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a scenario file (or standard input) and print one report per scenario.
    Run {
        /// Scenario file; reads standard input when absent or "-".
        path: Option<PathBuf>,
        /// Override every post-condition tolerance.
        #[arg(long, allow_negative_numbers = true)]
        tol: Option<f64>,
        /// Attach brute-force and exact cross-checks to each report.
        #[arg(long)]
        with_oracle: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the seeded invariant suites.
    Selftest,
    /// Print the scenario schema.
    Schema,
}

fn read_input(path: Option<PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage problems are input errors; help and version are not errors
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Schema => {
            print!("{SCHEMA}");
            ExitCode::SUCCESS
        }
        Command::Selftest => {
            let results = selftest::run_all();
            for r in &results {
                let mark = if r.ok() { "PASS" } else { "FAIL" };
                println!("{mark} {} ({}/{})", r.name, r.passed, r.total);
            }
            if results.iter().all(|r| r.ok()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Command::Run {
            path,
            tol,
            with_oracle,
            format,
        } => {
            let text = match read_input(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("adelcap: cannot read input: {e}");
                    return ExitCode::from(1);
                }
            };
            if let Some(t) = tol {
                if !(t.is_finite() && t > 0.0) {
                    eprintln!("adelcap: --tol must be a positive number");
                    return ExitCode::from(1);
                }
            }
            let options = RunOptions { tol, with_oracle };
            let reports = match run_document(&text, &options) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("adelcap: {e}");
                    return ExitCode::from(e.class().exit_code() as u8);
                }
            };
            for r in &reports {
                match format {
                    Format::Json => println!("{}", r.to_json()),
                    Format::Text => print!("{}", r.to_text()),
                }
                if let report::Status::Error { code, message, .. } = &r.status {
                    eprintln!("scenario {}: {code}: {message}", r.index);
                }
            }
            ExitCode::from(exit_code(&reports) as u8)
        }
    }
}
