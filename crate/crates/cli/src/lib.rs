//! Command-line front end for `singular_spectra`.

pub mod commands;
pub mod config;
pub mod table;

use singular_spectra::Error;

pub use commands::{execute, Output};
pub use config::{parse_config, RunConfig};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// `--help` or `--version`; the payload is the text to print.
    #[error("{0}")]
    Help(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Help(_) => 0,
            CliError::Usage(_) => 2,
            CliError::Numerical(_) | CliError::Io(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParams(_) | Error::DomainError(_) | Error::NotApplicable(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

/// Runs `config` and writes its output. Returns the process exit code:
/// 0 on success, 1 when a verification reports violations, 2 for invalid
/// input and 3 for numerical or I/O failure.
pub fn run(config: &RunConfig) -> i32 {
    let result = execute(config).and_then(|out| {
        table::emit(&out.text, config.out.as_deref())?;
        Ok(out.pass)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
