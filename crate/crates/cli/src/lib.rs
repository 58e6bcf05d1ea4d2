//! Command-line front end: argument parsing, report assembly and rendering.
//!
//! Every subcommand produces a serialisable report with a list of verdicts;
//! the process exit code is zero exactly when all of them pass.

pub mod bounds;
pub mod penner;
pub mod pf;
pub mod track;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "cctl", version, about = "Translation-length bounds on the curve complex")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of lower and upper bounds for a range of genera.
    Bounds {
        #[arg(long)]
        genus_min: u32,
        #[arg(long)]
        genus_max: u32,
        #[arg(long, default_value_t = 0)]
        punctures: u32,
        /// Closed genera above this skip the Penner trace.
        #[arg(long, default_value_t = 200)]
        penner_max_genus: u32,
        #[arg(long)]
        json: bool,
    },
    /// Trace the Penner support engine and certify an upper bound.
    Penner {
        #[arg(long)]
        genus: u32,
        /// Iteration cap, default 3g².
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Analyse a transition matrix file, or run seeded random checks.
    Pf {
        #[arg(long, required_unless_present = "random", conflicts_with = "random")]
        input: Option<PathBuf>,
        /// Number of random irreducible matrices to check instead of a file.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Validate a train track file.
    Track {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::of(ok),
            detail: detail.into(),
        }
    }

    pub fn line(&self) -> String {
        format!("{}: {} ({})", self.name, self.status.label(), self.detail)
    }
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub passed: bool,
}

impl Output {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub(crate) fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })
}

pub(crate) fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialise")
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Bounds {
            genus_min,
            genus_max,
            punctures,
            penner_max_genus,
            json,
        } => {
            let table = bounds::run_bounds(*genus_min, *genus_max, *punctures, *penner_max_genus)?;
            Ok(Output {
                passed: table.passed(),
                text: if *json { to_json(&table) } else { table.render() },
            })
        }
        Command::Penner { genus, cap, json } => {
            let report = penner::run_penner(*genus, *cap)?;
            Ok(Output {
                passed: report.passed(),
                text: if *json { to_json(&report) } else { report.render() },
            })
        }
        Command::Pf {
            input,
            random,
            seed,
            json,
        } => {
            let report = match (input, random) {
                (Some(path), _) => pf::PfOutput::File(pf::run_pf(&read(path)?, path)?),
                (None, Some(n)) => pf::run_random(*n, *seed),
                (None, None) => return Err(CliError::Usage("pf needs --input or --random".into())),
            };
            Ok(Output {
                passed: report.passed(),
                text: if *json { to_json(&report) } else { report.render() },
            })
        }
        Command::Track { input, json } => {
            let report = track::run_track(&read(input)?, input)?;
            Ok(Output {
                passed: report.passed(),
                text: if *json { to_json(&report) } else { track::render(&report) },
            })
        }
    }
}
