mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;

/// A failure with the exit code it maps to.
#[derive(Debug)]
pub enum Failure {
    /// The input is not a valid Gauss code.
    Parse(String),
    /// Flags, files or diagram kinds do not fit the request.
    Config(String),
    /// A computation would exceed its budget.
    Budget(String),
    /// A move walk changed the invariants.
    Invariance(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 1,
            Failure::Config(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Invariance(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m)
            | Failure::Config(m)
            | Failure::Budget(m)
            | Failure::Invariance(m) => m,
        }
    }
}

impl From<vka::Error> for Failure {
    fn from(e: vka::Error) -> Self {
        use vka::diagram::DiagramError;
        match e {
            vka::Error::Diagram(DiagramError::KindMismatch { .. }) => {
                Failure::Config(e.to_string())
            }
            vka::Error::Diagram(_) | vka::Error::Polynomial(_) => Failure::Parse(e.to_string()),
            vka::Error::Budget(_) => Failure::Budget(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Failure::Invariance(report) = &f {
                print!("{report}");
            } else {
                eprintln!("error: {}", f.message());
            }
            ExitCode::from(f.code())
        }
    }
}
