use doppler::DopplerError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad scenario file, parameters outside a formula's domain, I/O trouble.
    #[error("{0}")]
    Validation(String),
    /// A solver failed while evaluating the scenario.
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }

    /// Wraps a library error with the scenario tag and grid epoch.
    pub fn at(tag: &str, t: Option<f64>, e: DopplerError) -> Self {
        let place = match t {
            Some(t) => format!("scenario '{tag}' at t = {t}"),
            None => format!("scenario '{tag}'"),
        };
        match e {
            DopplerError::Numeric(_) => CliError::Numeric(format!("{place}: {e}")),
            _ => CliError::Validation(format!("{place}: {e}")),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
