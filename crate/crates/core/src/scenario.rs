//! Executable scenarios: the two-lab correlated state with its signaling
//! gap, and the three retro-psychology trial models built on it.
//!
//! All three trial models share one quantum skeleton: a two-qubit state in
//! which an experience qubit is perfectly correlated with a record qubit,
//! and a valence-weighted choice on the experience question. The bias then
//! shows up, trial by trial, in the record read off afterwards.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::measure::{born_probability, luders_update, Outcome, ZERO_PROBABILITY};
use crate::policy::{biased_conditional_expectation, ChoicePolicy, RngSeed};
use crate::state::{validate_density, DensityMatrix, Projector, DEFAULT_TOL};

/// Base response time in milliseconds; only differences are reported, so the
/// base cancels.
pub const RT_BASE_MS: f64 = 700.0;

/// One labelled report entry: analytic value, empirical estimate, standard
/// error, and the sample count behind the estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub label: String,
    pub analytic: f64,
    pub empirical: f64,
    pub stderr: f64,
    pub n: u64,
}

/// Report of one scenario run.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioReport {
    pub seed: u64,
    pub n_trials: u64,
    pub rows: Vec<ReportRow>,
}

impl ScenarioReport {
    pub fn row(&self, label: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.label == label)
    }
}

/// Standard error of an empirical frequency.
pub fn binomial_stderr(p_hat: f64, n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    (p_hat * (1.0 - p_hat) / n as f64).sqrt()
}

/// The normalized state `(P Q' + P' Q) / Tr(P Q' + P' Q)`: perfectly
/// anticorrelated in the pair of commuting questions `(P, Q)`.
pub fn build_correlated_state(p: &Projector, q: &Projector) -> Result<DensityMatrix> {
    let comm = p.matrix().commutator_norm(q.matrix())?;
    if comm > DEFAULT_TOL {
        return Err(Error::NonCommuting { deviation: comm });
    }
    let pq_bar = p.matrix().matmul(q.complement().matrix())?;
    let p_bar_q = p.complement().matrix().matmul(q.matrix())?;
    let numerator = pq_bar.add(&p_bar_q)?;
    let trace = numerator.trace()?.re;
    if trace < ZERO_PROBABILITY {
        return Err(Error::ZeroTrace);
    }
    validate_density(numerator.scale_re(1.0 / trace), DEFAULT_TOL)
}

/// `Tr(P Q rho)`, the joint Yes-Yes probability of commuting questions.
fn joint_probability(rho: &DensityMatrix, p: &Projector, q: &Projector) -> Result<f64> {
    Ok(p
        .matrix()
        .matmul(q.matrix())?
        .matmul(rho.matrix())?
        .trace()?
        .re)
}

/// Two far-apart labs sharing a state: a fixed local question on lab A and
/// a menu of remote settings on lab B, answered under one policy.
#[derive(Debug, Clone)]
pub struct TwoLabScenario {
    state: DensityMatrix,
    local_p: Projector,
    remote_settings: Vec<(String, Option<Projector>)>,
    policy: ChoicePolicy,
}

impl TwoLabScenario {
    pub fn new(
        state: DensityMatrix,
        local_p: Projector,
        remote_settings: Vec<(String, Option<Projector>)>,
        policy: ChoicePolicy,
    ) -> Result<Self> {
        for (_, setting) in &remote_settings {
            if let Some(q) = setting {
                let comm = local_p.matrix().commutator_norm(q.matrix())?;
                if comm > state.tol() {
                    return Err(Error::NonCommuting { deviation: comm });
                }
            }
        }
        Ok(Self {
            state,
            local_p,
            remote_settings,
            policy,
        })
    }

    /// The canonical correlated-qubit instance: lab A asks `|0><0| ⊗ I`,
    /// lab B can ask the correlated question (`"q"`), a neutral rotated one
    /// (`"q1"`), or nothing (`"none"`).
    pub fn correlated_qubits(policy: ChoicePolicy, labels: &[&str]) -> Result<Self> {
        let p = crate::state::validate_projector(
            Matrix::basis_projector(2, 0).tensor(&Matrix::identity(2)),
            DEFAULT_TOL,
        )?;
        let q = crate::state::validate_projector(
            Matrix::identity(2).tensor(&Matrix::basis_projector(2, 0)),
            DEFAULT_TOL,
        )?;
        let plus = Matrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5])?;
        let q1 = crate::state::validate_projector(Matrix::identity(2).tensor(&plus), DEFAULT_TOL)?;
        let state = build_correlated_state(&p, &q)?;
        let mut settings: Vec<(String, Option<Projector>)> = Vec::new();
        for &label in labels {
            let setting = match label {
                "q" => Some(q.clone()),
                "q1" => Some(q1.clone()),
                "none" => None,
                other => {
                    return Err(Error::UnknownSetting {
                        label: String::from(other),
                    })
                }
            };
            settings.push((String::from(label), setting));
        }
        Self::new(state, p, settings, policy)
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn setting_labels(&self) -> impl Iterator<Item = &str> {
        self.remote_settings.iter().map(|(l, _)| l.as_str())
    }

    /// Local Yes-probability of `local_p` given the named remote setting.
    ///
    /// Under `Orthodox` the value is computed the long way, as the sum of
    /// joint probabilities over the remote outcomes; linearity of the trace
    /// makes it setting-independent. Under `Deterministic` and `Biased` the
    /// conditional formula takes over and the setting can matter.
    pub fn remote_marginal(&self, setting_label: &str) -> Result<f64> {
        let (_, setting) = self
            .remote_settings
            .iter()
            .find(|(label, _)| label == setting_label)
            .ok_or_else(|| Error::UnknownSetting {
                label: String::from(setting_label),
            })?;
        let q = match setting {
            None => return born_probability(&self.state, &self.local_p),
            Some(q) => q,
        };
        match self.policy {
            ChoicePolicy::Orthodox => {
                let yes = joint_probability(&self.state, &self.local_p, q)?;
                let no = joint_probability(&self.state, &self.local_p, &q.complement())?;
                Ok(yes + no)
            }
            ChoicePolicy::Deterministic(outcome) => {
                let effective = match outcome {
                    Outcome::Yes => q.clone(),
                    Outcome::No => q.complement(),
                };
                biased_conditional_expectation(&self.state, &self.local_p, &effective)
            }
            ChoicePolicy::Biased { .. } => {
                let (p_yes, p_no) = self.policy.distribution(&self.state, q)?;
                let mut marginal = 0.0;
                for (remote, prob) in [(q.clone(), p_yes), (q.complement(), p_no)] {
                    if born_probability(&self.state, &remote)? < ZERO_PROBABILITY {
                        continue;
                    }
                    marginal +=
                        prob * biased_conditional_expectation(&self.state, &self.local_p, &remote)?;
                }
                Ok(marginal)
            }
        }
    }

    /// Largest spread of the local marginal over the setting menu.
    pub fn signaling_gap(&self) -> Result<f64> {
        if self.remote_settings.len() < 2 {
            return Err(Error::NotEnoughSettings {
                count: self.remote_settings.len(),
            });
        }
        let mut lowest = f64::INFINITY;
        let mut highest = f64::NEG_INFINITY;
        for (label, _) in &self.remote_settings {
            let m = self.remote_marginal(label)?;
            lowest = lowest.min(m);
            highest = highest.max(m);
        }
        Ok(highest - lowest)
    }

    /// One analytic row per setting plus the gap row.
    pub fn report_rows(&self) -> Result<Vec<ReportRow>> {
        let mut rows = Vec::new();
        for (label, _) in &self.remote_settings {
            let value = self.remote_marginal(label)?;
            let mut row_label = String::from("marginal_");
            row_label.push_str(label);
            rows.push(ReportRow {
                label: row_label,
                analytic: value,
                empirical: value,
                stderr: 0.0,
                n: 0,
            });
        }
        rows.push(ReportRow {
            label: String::from("signaling_gap"),
            analytic: self.signaling_gap()?,
            empirical: self.signaling_gap()?,
            stderr: 0.0,
            n: 0,
        });
        Ok(rows)
    }
}

/// Probability of the favored experience and of a subsequent Yes on the
/// record question, for a correlated state under the given policy. For
/// perfectly correlated states the two coincide.
pub fn record_correlation(
    state: &DensityMatrix,
    record_p: &Projector,
    experience_q: &Projector,
    policy: &ChoicePolicy,
) -> Result<(f64, f64)> {
    let comm = record_p.matrix().commutator_norm(experience_q.matrix())?;
    if comm > state.tol() {
        return Err(Error::NonCommuting { deviation: comm });
    }
    let (p_yes, p_no) = policy.distribution(state, experience_q)?;
    let mut record_prob = 0.0;
    for (outcome, prob) in [(Outcome::Yes, p_yes), (Outcome::No, p_no)] {
        if prob <= 0.0 {
            continue;
        }
        let collapsed = luders_update(state, experience_q, outcome)?;
        record_prob += prob * born_probability(&collapsed, record_p)?;
    }
    Ok((p_yes, record_prob))
}

/// Which trial model to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    /// Valence-biased experience with a correlated stored record.
    FeelingFuture,
    /// Preference record correlated with a later target/stimulus valence.
    Avoidance,
    /// Response-time record correlated with a later congruence choice.
    Priming,
}

/// Inputs of one trial batch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialSpec {
    pub experiment: Experiment,
    pub weight: f64,
    pub n_trials: u64,
    pub rt_gap_ms: f64,
    pub seed: RngSeed,
}

impl TrialSpec {
    pub fn new(
        experiment: Experiment,
        weight: f64,
        n_trials: u64,
        rt_gap_ms: f64,
        seed: RngSeed,
    ) -> Result<Self> {
        if !(weight.is_finite() && weight > 0.0) {
            return Err(Error::InvalidWeight { value: weight });
        }
        if !(rt_gap_ms.is_finite() && rt_gap_ms >= 0.0) {
            return Err(Error::InvalidWeight { value: rt_gap_ms });
        }
        Ok(Self {
            experiment,
            weight,
            n_trials: n_trials.max(1),
            rt_gap_ms,
            seed,
        })
    }

    pub fn feeling_future(weight: f64, n_trials: u64, seed: RngSeed) -> Result<Self> {
        Self::new(Experiment::FeelingFuture, weight, n_trials, 0.0, seed)
    }

    pub fn avoidance(weight: f64, n_trials: u64, seed: RngSeed) -> Result<Self> {
        Self::new(Experiment::Avoidance, weight, n_trials, 0.0, seed)
    }

    pub fn priming(weight: f64, n_trials: u64, rt_gap_ms: f64, seed: RngSeed) -> Result<Self> {
        Self::new(Experiment::Priming, weight, n_trials, rt_gap_ms, seed)
    }

    pub fn run(&self) -> Result<ScenarioReport> {
        match self.experiment {
            Experiment::FeelingFuture => feeling_future(self),
            Experiment::Avoidance => avoidance(self),
            Experiment::Priming => priming(self),
        }
    }
}

/// Experience question on the first qubit, record question on the second,
/// perfectly correlated so that experience-Yes pairs with record-Yes.
fn experience_record_pair() -> Result<(DensityMatrix, Projector, Projector)> {
    let experience_q = crate::state::validate_projector(
        Matrix::basis_projector(2, 0).tensor(&Matrix::identity(2)),
        DEFAULT_TOL,
    )?;
    let record_p = crate::state::validate_projector(
        Matrix::identity(2).tensor(&Matrix::basis_projector(2, 0)),
        DEFAULT_TOL,
    )?;
    // Anticorrelating against the record's complement correlates with the
    // record itself.
    let state = build_correlated_state(&experience_q, &record_p.complement())?;
    Ok((state, experience_q, record_p))
}

struct TrialCounts {
    experience_yes: u64,
    record_yes: u64,
}

/// Per-trial loop shared by all three models: a fresh correlated state,
/// nature's weighted choice on the experience question, then an orthodox
/// read of the record. Each trial owns an independent RNG substream, so
/// results are invariant to scheduling.
fn run_correlated_trials(spec: &TrialSpec) -> Result<TrialCounts> {
    let (state, experience_q, record_p) = experience_record_pair()?;
    let policy = ChoicePolicy::biased(spec.weight, 1.0)?;
    let mut counts = TrialCounts {
        experience_yes: 0,
        record_yes: 0,
    };
    for trial in 0..spec.n_trials {
        let mut rng = spec.seed.stream_rng(trial);
        let outcome = policy.sample(&state, &experience_q, &mut rng)?;
        if outcome == Outcome::Yes {
            counts.experience_yes += 1;
        }
        let collapsed = luders_update(&state, &experience_q, outcome)?;
        if ChoicePolicy::Orthodox.sample(&collapsed, &record_p, &mut rng)? == Outcome::Yes {
            counts.record_yes += 1;
        }
    }
    Ok(counts)
}

fn two_frequency_report(
    spec: &TrialSpec,
    experience_label: &str,
    record_label: &str,
) -> Result<ScenarioReport> {
    let (state, experience_q, record_p) = experience_record_pair()?;
    let policy = ChoicePolicy::biased(spec.weight, 1.0)?;
    let (experience_analytic, record_analytic) =
        record_correlation(&state, &record_p, &experience_q, &policy)?;
    let counts = run_correlated_trials(spec)?;
    let n = spec.n_trials;
    let experience_hat = counts.experience_yes as f64 / n as f64;
    let record_hat = counts.record_yes as f64 / n as f64;
    Ok(ScenarioReport {
        seed: spec.seed.0,
        n_trials: n,
        rows: vec![
            ReportRow {
                label: String::from(experience_label),
                analytic: experience_analytic,
                empirical: experience_hat,
                stderr: binomial_stderr(experience_hat, n),
                n,
            },
            ReportRow {
                label: String::from(record_label),
                analytic: record_analytic,
                empirical: record_hat,
                stderr: binomial_stderr(record_hat, n),
                n,
            },
        ],
    })
}

/// Experience-and-record trial batch: the erotic-image experience question
/// biased by `w` against 1, with the stored screen record read afterwards.
/// Both probabilities land on `w / (w + 1)`.
pub fn feeling_future(spec: &TrialSpec) -> Result<ScenarioReport> {
    two_frequency_report(spec, "experience_yes", "record_yes")
}

/// Preference/target trial batch: the positive-valence question biased by
/// `w` against 1, with the earlier preference record read afterwards. The
/// hit rate (later target matching earlier preference) is `w / (w + 1)`.
pub fn avoidance(spec: &TrialSpec) -> Result<ScenarioReport> {
    two_frequency_report(spec, "positive_valence", "hit_rate")
}

/// Congruence/response-time trial batch. The congruent-word question is
/// biased by `w` against 1; the response-time record is fast on congruent
/// trials and slow on incongruent ones, `RT = base ± rt_gap/2`. The
/// reported difference is the bias-induced one,
/// `rt_gap * (2 p_congruent - 1)`, which vanishes at `w = 1` and saturates
/// at `rt_gap`.
pub fn priming(spec: &TrialSpec) -> Result<ScenarioReport> {
    let (state, congruent_q, fast_p) = experience_record_pair()?;
    let policy = ChoicePolicy::biased(spec.weight, 1.0)?;
    let (congruent_analytic, fast_analytic) =
        record_correlation(&state, &fast_p, &congruent_q, &policy)?;
    let gap = spec.rt_gap_ms;
    let mean_rt_analytic = RT_BASE_MS - (gap / 2.0) * (2.0 * fast_analytic - 1.0);
    let diff_analytic = gap * (2.0 * congruent_analytic - 1.0);

    let n = spec.n_trials;
    let mut rt_sum = 0.0;
    let mut congruent_yes = 0u64;
    let mut fast_yes = 0u64;
    for trial in 0..n {
        let mut rng = spec.seed.stream_rng(trial);
        let outcome = policy.sample(&state, &congruent_q, &mut rng)?;
        if outcome == Outcome::Yes {
            congruent_yes += 1;
        }
        let collapsed = luders_update(&state, &congruent_q, outcome)?;
        let rt = if ChoicePolicy::Orthodox.sample(&collapsed, &fast_p, &mut rng)? == Outcome::Yes {
            fast_yes += 1;
            RT_BASE_MS - gap / 2.0
        } else {
            RT_BASE_MS + gap / 2.0
        };
        rt_sum += rt;
    }
    let congruent_hat = congruent_yes as f64 / n as f64;
    let fast_hat = fast_yes as f64 / n as f64;
    let mean_rt = rt_sum / n as f64;
    let diff_hat = 2.0 * (RT_BASE_MS - mean_rt);
    Ok(ScenarioReport {
        seed: spec.seed.0,
        n_trials: n,
        rows: vec![
            ReportRow {
                label: String::from("congruent"),
                analytic: congruent_analytic,
                empirical: congruent_hat,
                stderr: binomial_stderr(congruent_hat, n),
                n,
            },
            ReportRow {
                label: String::from("mean_rt_ms"),
                analytic: mean_rt_analytic,
                empirical: mean_rt,
                stderr: gap * binomial_stderr(fast_hat, n),
                n,
            },
            ReportRow {
                label: String::from("rt_difference_ms"),
                analytic: diff_analytic,
                empirical: diff_hat,
                stderr: 2.0 * gap * binomial_stderr(fast_hat, n),
                n,
            },
        ],
    })
}
