//! Run configurations: strict JSON schemas in which unknown keys are
//! errors, plus validation that names the offending field.

use std::fs;
use std::path::Path;

use biased_collapse_core::policy::RngSeed;
use biased_collapse_core::scenario::TrialSpec;
use biased_collapse_core::{ChoicePolicy, Outcome};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfigFile {
    pub scenario: ScenarioConfig,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// One of `feeling-future`, `avoidance`, `priming`, `two-lab`.
    pub kind: String,
    #[serde(default)]
    pub weight: Option<f64>,
    #[serde(default)]
    pub n_trials: Option<u64>,
    #[serde(default)]
    pub rt_gap_ms: Option<f64>,
    #[serde(default)]
    pub policy: Option<PolicyConfig>,
    #[serde(default)]
    pub settings: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolicyConfig {
    /// One of `orthodox`, `biased`, `deterministic`.
    pub kind: String,
    #[serde(default)]
    pub weight_yes: Option<f64>,
    #[serde(default)]
    pub weight_no: Option<f64>,
    /// `yes` or `no`, deterministic policy only.
    #[serde(default)]
    pub outcome: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfigFile {
    /// Absolute tolerance for the deterministic residual checks.
    #[serde(default)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwirlConfigFile {
    pub dim: usize,
    pub n_samples: usize,
}

/// A validated run target.
#[derive(Debug, Clone)]
pub enum Scenario {
    Trials(TrialSpec),
    TwoLab {
        policy: ChoicePolicy,
        settings: Vec<String>,
    },
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::BadInput(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::BadInput(format!("config {}: {e}", path.display())))
}

pub fn load_run_config(path: &Path, seed: u64) -> Result<Scenario, CliError> {
    let file: RunConfigFile = read_json(path)?;
    build_scenario(&file.scenario, seed)
}

pub fn load_verify_config(path: Option<&Path>) -> Result<f64, CliError> {
    let tolerance = match path {
        None => None,
        Some(p) => read_json::<VerifyConfigFile>(p)?.tolerance,
    };
    let tolerance = tolerance.unwrap_or(1e-12);
    if !(tolerance.is_finite() && tolerance >= 0.0) {
        return Err(CliError::BadInput(format!(
            "field 'tolerance' must be finite and non-negative, got {tolerance}"
        )));
    }
    Ok(tolerance)
}

pub fn load_twirl_config(path: &Path) -> Result<(usize, usize), CliError> {
    let file: TwirlConfigFile = read_json(path)?;
    if file.dim < 2 {
        return Err(CliError::BadInput(format!(
            "field 'dim' must be at least 2, got {}",
            file.dim
        )));
    }
    if file.n_samples < 1 {
        return Err(CliError::BadInput(
            "field 'n_samples' must be at least 1".into(),
        ));
    }
    Ok((file.dim, file.n_samples))
}

fn require<T: Copy>(value: Option<T>, field: &str, kind: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::BadInput(format!("scenario '{kind}' requires field '{field}'")))
}

fn reject_field<T>(value: &Option<T>, field: &str, kind: &str) -> Result<(), CliError> {
    if value.is_some() {
        return Err(CliError::BadInput(format!(
            "field '{field}' does not apply to scenario '{kind}'"
        )));
    }
    Ok(())
}

fn build_scenario(config: &ScenarioConfig, seed: u64) -> Result<Scenario, CliError> {
    let kind = config.kind.as_str();
    match kind {
        "feeling-future" | "avoidance" | "priming" => {
            reject_field(&config.policy, "policy", kind)?;
            reject_field(&config.settings, "settings", kind)?;
            let weight = require(config.weight, "weight", kind)?;
            let n_trials = require(config.n_trials, "n_trials", kind)?;
            if n_trials < 1 {
                return Err(CliError::BadInput(
                    "field 'n_trials' must be at least 1".into(),
                ));
            }
            let spec = match kind {
                "feeling-future" => {
                    reject_field(&config.rt_gap_ms, "rt_gap_ms", kind)?;
                    TrialSpec::feeling_future(weight, n_trials, RngSeed(seed))
                }
                "avoidance" => {
                    reject_field(&config.rt_gap_ms, "rt_gap_ms", kind)?;
                    TrialSpec::avoidance(weight, n_trials, RngSeed(seed))
                }
                _ => {
                    let rt_gap_ms = require(config.rt_gap_ms, "rt_gap_ms", kind)?;
                    TrialSpec::priming(weight, n_trials, rt_gap_ms, RngSeed(seed))
                }
            }
            .map_err(|e| CliError::BadInput(format!("field 'weight' or 'rt_gap_ms': {e}")))?;
            Ok(Scenario::Trials(spec))
        }
        "two-lab" => {
            reject_field(&config.weight, "weight", kind)?;
            reject_field(&config.n_trials, "n_trials", kind)?;
            reject_field(&config.rt_gap_ms, "rt_gap_ms", kind)?;
            let policy_config = config.policy.as_ref().ok_or_else(|| {
                CliError::BadInput("scenario 'two-lab' requires field 'policy'".into())
            })?;
            let policy = build_policy(policy_config)?;
            let settings = config.settings.clone().ok_or_else(|| {
                CliError::BadInput("scenario 'two-lab' requires field 'settings'".into())
            })?;
            if settings.len() < 2 {
                return Err(CliError::BadInput(
                    "field 'settings' needs at least two entries".into(),
                ));
            }
            for s in &settings {
                if !matches!(s.as_str(), "q" | "q1" | "none") {
                    return Err(CliError::BadInput(format!(
                        "field 'settings': unknown setting '{s}' (expected q, q1, or none)"
                    )));
                }
            }
            Ok(Scenario::TwoLab { policy, settings })
        }
        other => Err(CliError::BadInput(format!(
            "field 'kind': unknown scenario '{other}' \
             (expected feeling-future, avoidance, priming, or two-lab)"
        ))),
    }
}

fn build_policy(config: &PolicyConfig) -> Result<ChoicePolicy, CliError> {
    match config.kind.as_str() {
        "orthodox" => {
            reject_policy_extras(config, "orthodox")?;
            Ok(ChoicePolicy::Orthodox)
        }
        "biased" => {
            if config.outcome.is_some() {
                return Err(CliError::BadInput(
                    "field 'outcome' does not apply to policy 'biased'".into(),
                ));
            }
            let weight_yes = config.weight_yes.ok_or_else(|| {
                CliError::BadInput("policy 'biased' requires field 'weight_yes'".into())
            })?;
            let weight_no = config.weight_no.ok_or_else(|| {
                CliError::BadInput("policy 'biased' requires field 'weight_no'".into())
            })?;
            ChoicePolicy::biased(weight_yes, weight_no)
                .map_err(|e| CliError::BadInput(format!("field 'weight_yes'/'weight_no': {e}")))
        }
        "deterministic" => {
            if config.weight_yes.is_some() || config.weight_no.is_some() {
                return Err(CliError::BadInput(
                    "fields 'weight_yes'/'weight_no' do not apply to policy 'deterministic'"
                        .into(),
                ));
            }
            let outcome = config.outcome.as_deref().ok_or_else(|| {
                CliError::BadInput("policy 'deterministic' requires field 'outcome'".into())
            })?;
            match outcome {
                "yes" => Ok(ChoicePolicy::Deterministic(Outcome::Yes)),
                "no" => Ok(ChoicePolicy::Deterministic(Outcome::No)),
                other => Err(CliError::BadInput(format!(
                    "field 'outcome': expected 'yes' or 'no', got '{other}'"
                ))),
            }
        }
        other => Err(CliError::BadInput(format!(
            "field 'policy.kind': unknown policy '{other}'"
        ))),
    }
}

fn reject_policy_extras(config: &PolicyConfig, kind: &str) -> Result<(), CliError> {
    if config.weight_yes.is_some() || config.weight_no.is_some() || config.outcome.is_some() {
        return Err(CliError::BadInput(format!(
            "policy '{kind}' takes no extra fields"
        )));
    }
    Ok(())
}
