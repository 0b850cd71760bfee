//! Rules by which nature selects a measurement outcome.
//!
//! `Orthodox` is the usual Born-rule chance. `Biased` renormalizes the Born
//! weights by strictly positive valence weights, reducing to `Orthodox` at
//! equal weights and reaching `Deterministic` in the infinite-ratio limit.
//! `Deterministic` forces one answer outright.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::measure::{born_probability, Outcome, ZERO_PROBABILITY};
use crate::state::{DensityMatrix, Projector};

/// Seed for reproducible sampling. `stream_rng` derives independent
/// substreams so batched runs can be split across workers without changing
/// the merged statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    pub fn stream_rng(self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0);
        rng.set_stream(stream);
        rng
    }
}

/// Nature's-choice policy for a posed Yes/No question.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChoicePolicy {
    /// Born-rule chance.
    Orthodox,
    /// Weighted-Born renormalization `w_yes q / (w_yes q + w_no (1 - q))`.
    Biased { weight_yes: f64, weight_no: f64 },
    /// One answer, always.
    Deterministic(Outcome),
}

impl ChoicePolicy {
    /// Biased policy with validated weights.
    pub fn biased(weight_yes: f64, weight_no: f64) -> Result<ChoicePolicy> {
        for w in [weight_yes, weight_no] {
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidWeight { value: w });
            }
        }
        Ok(ChoicePolicy::Biased {
            weight_yes,
            weight_no,
        })
    }

    /// Yes/No probabilities for this policy on the given state and question.
    pub fn distribution(&self, rho: &DensityMatrix, p: &Projector) -> Result<(f64, f64)> {
        let q = born_probability(rho, p)?;
        let p_yes = match *self {
            ChoicePolicy::Orthodox => q,
            ChoicePolicy::Biased {
                weight_yes,
                weight_no,
            } => {
                for w in [weight_yes, weight_no] {
                    if !(w.is_finite() && w > 0.0) {
                        return Err(Error::InvalidWeight { value: w });
                    }
                }
                // Equal weights reduce to the orthodox rule exactly.
                if weight_yes == weight_no {
                    q
                } else {
                    weight_yes * q / (weight_yes * q + weight_no * (1.0 - q))
                }
            }
            ChoicePolicy::Deterministic(outcome) => {
                let born = match outcome {
                    Outcome::Yes => q,
                    Outcome::No => 1.0 - q,
                };
                if born < ZERO_PROBABILITY {
                    return Err(Error::ImpossibleOutcome {
                        born_probability: born,
                    });
                }
                match outcome {
                    Outcome::Yes => 1.0,
                    Outcome::No => 0.0,
                }
            }
        };
        Ok((p_yes, 1.0 - p_yes))
    }

    /// Draws an outcome from `distribution` on exactly one uniform variate,
    /// so seeded call sequences stay aligned across policies.
    pub fn sample(
        &self,
        rho: &DensityMatrix,
        p: &Projector,
        rng: &mut impl Rng,
    ) -> Result<Outcome> {
        let (p_yes, _) = self.distribution(rho, p)?;
        let u: f64 = rng.gen();
        Ok(if u < p_yes { Outcome::Yes } else { Outcome::No })
    }
}

/// Expectation of `P` given that a commuting question `Q` was posed and
/// nature definitely answered Yes: `Tr(P Q rho) / Tr(Q rho)`.
pub fn biased_conditional_expectation(
    rho: &DensityMatrix,
    p: &Projector,
    q: &Projector,
) -> Result<f64> {
    let comm = p.matrix().commutator_norm(q.matrix())?;
    if comm > rho.tol() {
        return Err(Error::NonCommuting { deviation: comm });
    }
    let conditioning = q.matrix().matmul(rho.matrix())?.trace()?.re;
    if conditioning < ZERO_PROBABILITY {
        return Err(Error::ZeroConditioning { trace: conditioning });
    }
    let joint = p
        .matrix()
        .matmul(q.matrix())?
        .matmul(rho.matrix())?
        .trace()?
        .re;
    Ok(joint / conditioning)
}
