//! JSON model files and built-in model keywords.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stepfn::{SpectralModel, StepFunction};

/// On-disk form of a [`SpectralModel`]. All logarithms are natural.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModelSpec {
    Finite { values: Vec<f64> },
    /// `[u_right, w]` pairs.
    Explicit { plateaus: Vec<(f64, f64)> },
    Power { c: f64, p: f64 },
    Harmonic {},
    Counterexample {},
}

impl ModelSpec {
    pub fn build(&self) -> Result<SpectralModel> {
        match self {
            ModelSpec::Finite { values } => {
                SpectralModel::finite(values).map_err(|e| Error::Schema(format!("finite model: {e}")))
            }
            ModelSpec::Explicit { plateaus } => Ok(SpectralModel::Explicit(StepFunction::new(plateaus)?)),
            ModelSpec::Power { c, p } => {
                SpectralModel::power_tail(*c, *p).map_err(|e| Error::Schema(format!("power model: {e}")))
            }
            ModelSpec::Harmonic {} => Ok(SpectralModel::Harmonic),
            ModelSpec::Counterexample {} => Ok(SpectralModel::counterexample()),
        }
    }

    /// Finite models are written as their explicit plateaus, which keeps
    /// the stored logarithms bit-exact.
    pub fn from_model(model: &SpectralModel) -> Self {
        match model {
            SpectralModel::Finite(f) | SpectralModel::Explicit(f) => ModelSpec::Explicit {
                plateaus: f.plateaus().iter().map(|p| (p.u_right, p.w)).collect(),
            },
            SpectralModel::PowerTail { c, p } => ModelSpec::Power { c: *c, p: *p },
            SpectralModel::Harmonic => ModelSpec::Harmonic {},
            SpectralModel::Counterexample(_) => ModelSpec::Counterexample {},
        }
    }
}

/// Parses and validates a model document. JSON syntax errors carry the
/// line and column; invariant violations name the offending entry.
pub fn parse_model(text: &str) -> Result<SpectralModel> {
    let spec: ModelSpec = serde_json::from_str(text)
        .map_err(|e| Error::Schema(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    spec.build()
}

pub fn load_model(path: impl AsRef<Path>) -> Result<SpectralModel> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Schema(format!("cannot read model file {}: {e}", path.display())))?;
    parse_model(&text).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

/// A model argument: `harmonic`, `counterexample`, `power:<c>:<p>`, or a
/// path to a JSON model file.
pub fn resolve_model(arg: &str) -> Result<SpectralModel> {
    match arg {
        "harmonic" => return Ok(SpectralModel::Harmonic),
        "counterexample" => return Ok(SpectralModel::counterexample()),
        _ => {}
    }
    if let Some(rest) = arg.strip_prefix("power:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let parsed: Vec<f64> = parts.iter().filter_map(|p| p.parse().ok()).collect();
        if parsed.len() != 2 || parts.len() != 2 {
            return Err(Error::Schema(format!("expected power:<c>:<p>, got `{arg}`")));
        }
        return SpectralModel::power_tail(parsed[0], parsed[1]);
    }
    load_model(arg)
}
