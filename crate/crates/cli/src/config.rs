use std::path::Path;

use serde_json::Value;
use treealg::models::KernelAssignment;
use treealg::trees::Scaling;

use crate::output::CliError;

/// Scaling and kernel data shared by every command.
pub struct Context {
    pub sc: Scaling,
    kernels: Option<Value>,
}

impl Context {
    /// Without a file the generic scaling `s = (1)`, `|t| = 199/100`,
    /// `|u| = 149/100`, `|l| = −151/100` and unit Gaussian kernels are used.
    pub fn load(path: Option<&Path>) -> Result<Context, CliError> {
        let Some(path) = path else {
            return Ok(Context {
                sc: Scaling::generic(),
                kernels: None,
            });
        };
        let v = read_json(&format!("@{}", path.display()))?;
        let sc = match v.get("scaling") {
            Some(s) => Scaling::from_json(s)?,
            None => Scaling::generic(),
        };
        Ok(Context {
            sc,
            kernels: Some(v),
        })
    }

    pub fn dim(&self) -> usize {
        self.sc.d_plus_1()
    }

    pub fn assignment(&self) -> Result<KernelAssignment, CliError> {
        Ok(match &self.kernels {
            Some(v) => KernelAssignment::from_json(&self.sc, v)?,
            None => KernelAssignment::standard(&self.sc)?,
        })
    }

    /// A point of the right dimension; `None` means the origin.
    pub fn point(&self, p: Option<&crate::args::Point>) -> Result<Vec<f64>, CliError> {
        match p {
            None => Ok(vec![0.0; self.dim()]),
            Some(p) if p.0.len() == self.dim() => Ok(p.0.clone()),
            Some(p) => Err(CliError::Usage(format!(
                "point has {} coordinates, the scaling needs {}",
                p.0.len(),
                self.dim()
            ))),
        }
    }
}

/// JSON given inline or as `@path`.
pub fn read_json(arg: &str) -> Result<Value, CliError> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_string(),
            source,
        })?,
        None => arg.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid json: {e}")))
}
