//! Experiment configuration: JSON file schema and flag resolution.
//!
//! A config file mirrors the experiment parameters field-for-field:
//!
//! ```json
//! {
//!   "operator": { "n_values": [10, 25, 50, 100, 200], "l": 1, "alpha": 0.5, "beta": 1.0 },
//!   "sequences": { "kind": "affine_reciprocal", "c_p": 0.5, "c_q": 1.0 },
//!   "corpus": ["sin_pi", "exp_neg"],
//!   "grid_points": 201,
//!   "output": { "csv_path": "sweep.csv", "svg_path": "sweep.svg", "precision": 12 }
//! }
//! ```
//!
//! `operator.n` may replace `n_values` for a single-degree run. Sequence
//! kinds: `affine_reciprocal` (`p_n = 1 - c_p/n`, `q_n = 1 - c_q/n`),
//! `power` (`p_n = 1 - n^-r_p`, `q_n = 1 - n^-r_q`), and `custom` with
//! `triples: [[n, p, q], ...]`.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use pqss::{FunctionHandle, OperatorTemplate, SequenceSpec};

use crate::CliError;

pub const DEFAULT_N_VALUES: [u32; 5] = [10, 25, 50, 100, 200];
pub const DEFAULT_GRID: usize = 201;
pub const DEFAULT_PRECISION: usize = 12;

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub operator: OperatorSection,
    #[serde(default)]
    pub sequences: SequenceSection,
    #[serde(default)]
    pub corpus: Option<Vec<String>>,
    #[serde(default)]
    pub grid_points: Option<usize>,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorSection {
    #[serde(default)]
    pub n: Option<u32>,
    #[serde(default)]
    pub n_values: Option<Vec<u32>>,
    #[serde(default = "default_l")]
    pub l: u32,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_beta")]
    pub beta: f64,
}

fn default_l() -> u32 {
    1
}
fn default_alpha() -> f64 {
    0.5
}
fn default_beta() -> f64 {
    1.0
}

impl Default for OperatorSection {
    fn default() -> Self {
        Self {
            n: None,
            n_values: None,
            l: default_l(),
            alpha: default_alpha(),
            beta: default_beta(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceSection {
    #[serde(default = "default_kind")]
    pub kind: String,
    #[serde(default)]
    pub c_p: Option<f64>,
    #[serde(default)]
    pub c_q: Option<f64>,
    #[serde(default)]
    pub r_p: Option<f64>,
    #[serde(default)]
    pub r_q: Option<f64>,
    #[serde(default)]
    pub triples: Option<Vec<(u32, f64, f64)>>,
}

fn default_kind() -> String {
    "affine_reciprocal".to_string()
}

impl Default for SequenceSection {
    fn default() -> Self {
        Self {
            kind: default_kind(),
            c_p: None,
            c_q: None,
            r_p: None,
            r_q: None,
            triples: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default)]
    pub csv_path: Option<PathBuf>,
    #[serde(default)]
    pub svg_path: Option<PathBuf>,
    #[serde(default)]
    pub precision: Option<usize>,
}

/// Everything a sweep command needs, resolved and validated.
pub struct ResolvedExperiment {
    pub template: OperatorTemplate,
    pub spec: SequenceSpec,
    pub n_values: Vec<u32>,
    pub corpus_names: Vec<String>,
    pub corpus: Vec<FunctionHandle>,
    pub grid_points: usize,
    pub csv_path: Option<PathBuf>,
    pub svg_path: Option<PathBuf>,
    pub precision: usize,
}

pub fn load_config_file(path: &std::path::Path) -> Result<ExperimentConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Invalid(format!("config {}: {e}", path.display())))
}

pub fn resolve(config: ExperimentConfig, default_corpus: &[&str]) -> Result<ResolvedExperiment, CliError> {
    let op = &config.operator;
    let n_values = match (&op.n, &op.n_values) {
        (Some(_), Some(_)) => {
            return Err(CliError::Invalid(
                "operator.n and operator.n_values are mutually exclusive".to_string(),
            ))
        }
        (Some(n), None) => vec![*n],
        (None, Some(values)) => values.clone(),
        (None, None) => DEFAULT_N_VALUES.to_vec(),
    };

    let seq = &config.sequences;
    let spec = match seq.kind.as_str() {
        "affine_reciprocal" => SequenceSpec::AffineReciprocal {
            c_p: seq.c_p.unwrap_or(0.5),
            c_q: seq.c_q.unwrap_or(1.0),
        },
        "power" => SequenceSpec::Power {
            r_p: seq.r_p.unwrap_or(1.0),
            r_q: seq.r_q.unwrap_or(0.5),
        },
        "custom" => SequenceSpec::Custom(seq.triples.clone().unwrap_or_default()),
        other => {
            return Err(CliError::Invalid(format!(
                "unknown sequence kind {other:?}: expected affine_reciprocal, power, or custom"
            )))
        }
    };
    spec.validate().map_err(CliError::from_param)?;

    let corpus_names: Vec<String> = match &config.corpus {
        Some(names) => names.clone(),
        None => default_corpus.iter().map(|s| s.to_string()).collect(),
    };
    let corpus = corpus_names
        .iter()
        .map(|name| {
            pqss::builtin(name).ok_or_else(|| {
                CliError::Invalid(format!(
                    "unknown corpus function {name:?}: built-ins are {}",
                    pqss::BUILTIN_NAMES.join(", ")
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    Ok(ResolvedExperiment {
        template: OperatorTemplate {
            l: op.l,
            alpha: op.alpha,
            beta: op.beta,
        },
        spec,
        n_values,
        corpus_names,
        corpus,
        grid_points: config.grid_points.unwrap_or(DEFAULT_GRID),
        csv_path: config.output.csv_path.clone(),
        svg_path: config.output.svg_path.clone(),
        precision: config.output.precision.unwrap_or(DEFAULT_PRECISION),
    })
}
