use serde_json::Value;
use thiserror::Error;

use crate::args::Format;

/// What a command produced, rendered later in the requested format.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub latex: Option<String>,
    /// False when an asserted check failed.
    pub pass: bool,
}

impl Outcome {
    pub fn new(text: String, json: Value) -> Outcome {
        Outcome {
            text,
            json,
            latex: None,
            pass: true,
        }
    }

    pub fn with_latex(mut self, latex: String) -> Outcome {
        self.latex = Some(latex);
        self
    }

    pub fn with_pass(mut self, pass: bool) -> Outcome {
        self.pass = pass;
        self
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        Ok(match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json)
                .map_err(|e| CliError::Internal(e.to_string()))?,
            Format::Latex => self.latex.clone().ok_or_else(|| {
                CliError::Usage(
                    "latex output is available for coproducts, antipodes and coactions".into(),
                )
            })?,
        })
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<treealg::Error> for CliError {
    fn from(e: treealg::Error) -> Self {
        match e {
            treealg::Error::Invariant(_) | treealg::Error::NotConnected(_) => {
                CliError::Internal(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Internal(_) => 3,
        }
    }
}

/// Shortest round-trip formatting, with `-0` printed as `0`.
pub fn num(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else {
        format!("{v}")
    }
}

pub fn point_text(p: &[f64]) -> String {
    let parts: Vec<String> = p.iter().map(|v| num(*v)).collect();
    format!("({})", parts.join(", "))
}
