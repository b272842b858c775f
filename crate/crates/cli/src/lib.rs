//! Command-line front end: input parsing, command dispatch and reports.

pub mod input;
pub mod report;
pub mod table;

use std::io::Read as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use diagroot::DEFAULT_CAP;
use thiserror::Error;

pub use input::{parse_entry, parse_input, render, Entry, InputError, ProblemSpec};
pub use report::{EquivMode, EXIT_TABLE_FAILED, EXIT_USAGE};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Core(#[from] diagroot::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "diagroot",
    version,
    about = "Root systems and Weyl groupoids of diagonal braidings"
)]
pub struct Cli {
    /// Maximal number of bases to visit before giving up.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide finiteness, list positive roots, match the rank-2 table.
    Classify {
        /// Input file, `-` for stdin, or an inline JSON document.
        input: String,
    },
    /// Dump the bases and reflection edges of the Weyl groupoid.
    Groupoid {
        input: String,
        /// Write the exchange graph in DOT format to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Test twist or Weyl equivalence of two inputs.
    Equiv {
        #[arg(long, value_enum, default_value = "weyl")]
        mode: EquivMode,
        a: String,
        b: String,
    },
    /// Check every row of the built-in rank-2 table.
    Table,
}

/// What the binary prints and the status it exits with.
#[derive(Debug)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

pub fn read_spec(arg: &str) -> Result<ProblemSpec, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|source| CliError::Io {
                path: "<stdin>".into(),
                source,
            })?;
        s
    } else {
        std::fs::read_to_string(arg).map_err(|source| CliError::Io {
            path: arg.into(),
            source,
        })?
    };
    Ok(parse_input(&text)?)
}

fn json(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let cap_for = |spec: &ProblemSpec| cli.cap.or(spec.cap).unwrap_or(DEFAULT_CAP);
    match &cli.command {
        Command::Classify { input } => {
            let spec = read_spec(input)?;
            let (r, code) = report::classify(&spec.braiding()?, &spec.free, cap_for(&spec))?;
            let stdout = match cli.format {
                Format::Json => json(&r),
                Format::Text => report::classify_text(&r),
            };
            Ok(Output { stdout, code })
        }
        Command::Groupoid { input, dot } => {
            let spec = read_spec(input)?;
            let (v, text, graph, code) =
                report::groupoid(&spec.braiding()?, &spec.free, cap_for(&spec))?;
            if let (Some(path), Some(graph)) = (dot, graph) {
                std::fs::write(path, graph).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
            }
            let stdout = match cli.format {
                Format::Json => json(&v),
                Format::Text => text,
            };
            Ok(Output { stdout, code })
        }
        Command::Equiv { mode, a, b } => {
            let (sa, sb) = (read_spec(a)?, read_spec(b)?);
            let cap = cli.cap.or(sa.cap).or(sb.cap).unwrap_or(DEFAULT_CAP);
            let (v, code) = report::equiv(&sa.braiding()?, &sb.braiding()?, *mode, cap)?;
            let stdout = match cli.format {
                Format::Json => json(&v),
                Format::Text => match v["equivalent"].as_bool() {
                    Some(true) => "equivalent\n".into(),
                    Some(false) => "not equivalent\n".into(),
                    None => {
                        format!("undecided: a is {}, b is {}\n", v["a"], v["b"]).replace('"', "")
                    }
                },
            };
            Ok(Output { stdout, code })
        }
        Command::Table => {
            let checks = table::run_table(cli.cap.unwrap_or(DEFAULT_CAP));
            let code = if checks.iter().all(|c| c.pass) {
                0
            } else {
                EXIT_TABLE_FAILED
            };
            let stdout = match cli.format {
                Format::Json => json(&checks),
                Format::Text => table::table_text(&checks),
            };
            Ok(Output { stdout, code })
        }
    }
}
