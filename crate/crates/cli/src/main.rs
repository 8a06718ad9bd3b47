//! `tpcalc`: command-line front end for the Thom polynomial engine.
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 bad usage or input.

mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use report::Report;

#[derive(Parser, Debug)]
#[command(
    name = "tpcalc",
    version,
    about = "Exact multi-singularity Thom polynomials"
)]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Residual database file overriding the shipped entries.
    #[arg(long, global = true, value_name = "PATH")]
    db: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the source or target Thom polynomial of a multi-singularity type.
    Expand {
        #[arg(long = "type", value_name = "A0,A1,...")]
        types: String,
        #[arg(long, allow_hyphen_values = true)]
        kappa: i32,
        #[arg(long, default_value = "target")]
        side: String,
        /// Divide by #Aut (target) or #Aut of the entries after the first (source).
        #[arg(long)]
        normalized: bool,
    },
    /// Evaluate a polynomial in c, s and fs on a model map.
    Eval {
        #[arg(long)]
        model: String,
        #[arg(long)]
        poly: String,
        /// Defaults to `source` if the polynomial mentions c or fs, else `target`.
        #[arg(long)]
        side: Option<String>,
    },
    /// Count the points of a zero-dimensional multi-singularity locus.
    Count {
        #[arg(long)]
        model: String,
        #[arg(long = "type", value_name = "A0,A1,...")]
        types: String,
        /// Defaults to the codimension of the model.
        #[arg(long, allow_hyphen_values = true)]
        kappa: Option<i32>,
    },
    /// Thom-Porteous determinant det[c_{kappa+k+j-i}].
    Porteous {
        #[arg(long, allow_hyphen_values = true)]
        kappa: i32,
        #[arg(long)]
        k: u32,
    },
    /// Recover a residual polynomial from a known expansion.
    Extract {
        #[arg(long = "type", value_name = "A0,A1,...")]
        types: String,
        #[arg(long, allow_hyphen_values = true)]
        kappa: i32,
        #[arg(long)]
        side: String,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// The polynomial is given in normalized form.
        #[arg(long)]
        normalized: bool,
    },
    /// Solve for a residual polynomial from known counts on model maps.
    Interp {
        #[arg(long = "type", value_name = "A0,A1,...")]
        types: String,
        #[arg(long, allow_hyphen_values = true)]
        kappa: i32,
        /// `model=count`, repeatable.
        #[arg(long = "constraint", value_name = "MODEL=COUNT")]
        constraints: Vec<String>,
    },
    /// Count double points of a parametrized plane curve by resultants.
    Oracle {
        /// `x(t), y(t)`
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
    },
    /// Run a check suite.
    Verify {
        #[arg(long, default_value = "all", value_parser = ["table1", "classical", "series", "properties", "all"])]
        suite: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match commands::run(&cli) {
        Ok(mut report) => {
            report.timing_ms = start.elapsed().as_secs_f64() * 1000.0;
            emit(&report, cli.json);
            if report.checks.iter().all(|c| c.pass) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("run `tpcalc --help` for usage");
            ExitCode::from(2)
        }
    }
}

fn emit(report: &Report, json: bool) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serializes")
        );
    } else {
        for line in &report.text {
            println!("{line}");
        }
    }
}
