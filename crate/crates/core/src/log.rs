//! Process-time record of probing actions, outcomes, and collapses.
//!
//! Stage 0 carries the initial state; the n-th posed question advances the
//! log to stage n. The log is a value: posing a question returns a new log
//! and leaves the old one untouched.
//!
//! `effective_history` rebuilds the past implied by the latest collapse:
//! the current state evolved backward through the inverses of the unitary
//! steps, with the collapses themselves left in place. With identity
//! unitaries the effective past at every stage is simply the current state,
//! which in general differs from the state actually recorded there.

use alloc::vec::Vec;
use rand::Rng;

use crate::error::{Error, Result};
use crate::measure::{luders_update, Outcome};
use crate::policy::ChoicePolicy;
use crate::state::{validate_density, DensityMatrix, Projector, UnitaryStep};

/// One probing action: optional unitary evolution, a question, nature's
/// answer, and the states on either side of the collapse.
#[derive(Debug, Clone)]
pub struct ProcessEvent {
    pub stage: usize,
    pub question: Projector,
    pub outcome: Outcome,
    pub pre_state: DensityMatrix,
    pub post_state: DensityMatrix,
    pub pre_unitary: Option<UnitaryStep>,
}

/// Ordered sequence of probing actions starting from an initial state.
#[derive(Debug, Clone)]
pub struct EventLog {
    initial_state: DensityMatrix,
    events: Vec<ProcessEvent>,
}

impl EventLog {
    pub fn new(initial_state: DensityMatrix) -> Self {
        Self {
            initial_state,
            events: Vec::new(),
        }
    }

    pub fn initial_state(&self) -> &DensityMatrix {
        &self.initial_state
    }

    pub fn events(&self) -> &[ProcessEvent] {
        &self.events
    }

    /// Index of the newest stage; 0 when nothing has been posed yet.
    pub fn latest_stage(&self) -> usize {
        self.events.len()
    }

    /// State on the newest stage.
    pub fn current_state(&self) -> &DensityMatrix {
        self.events
            .last()
            .map(|e| &e.post_state)
            .unwrap_or(&self.initial_state)
    }

    /// State actually recorded at a stage when it was live.
    pub fn recorded_state(&self, stage: usize) -> Result<&DensityMatrix> {
        if stage > self.latest_stage() {
            return Err(Error::StageOutOfRange {
                stage,
                latest: self.latest_stage(),
            });
        }
        if stage == 0 {
            Ok(&self.initial_state)
        } else {
            Ok(&self.events[stage - 1].post_state)
        }
    }

    /// Poses a question: applies the optional unitary, lets the policy pick
    /// the outcome, collapses, and returns the outcome with the extended log.
    pub fn pose_question(
        &self,
        question: &Projector,
        policy: &ChoicePolicy,
        rng: &mut impl Rng,
        pre_unitary: Option<UnitaryStep>,
    ) -> Result<(Outcome, EventLog)> {
        let pre_state = self.current_state().clone();
        let evolved = match &pre_unitary {
            Some(u) => {
                let m = u.conjugate(pre_state.matrix())?;
                validate_density(m, pre_state.tol())?
            }
            None => pre_state.clone(),
        };
        let outcome = policy.sample(&evolved, question, rng)?;
        let post_state = luders_update(&evolved, question, outcome)?;
        let mut log = self.clone();
        log.events.push(ProcessEvent {
            stage: self.latest_stage() + 1,
            question: question.clone(),
            outcome,
            pre_state,
            post_state,
            pre_unitary,
        });
        Ok((outcome, log))
    }

    /// The effective past at `at_stage`: the current state evolved backward
    /// through the inverses of every unitary step after that stage.
    pub fn effective_history(&self, at_stage: usize) -> Result<DensityMatrix> {
        let latest = self.latest_stage();
        if at_stage > latest {
            return Err(Error::StageOutOfRange {
                stage: at_stage,
                latest,
            });
        }
        let mut state = self.current_state().clone();
        for event in self.events[at_stage..].iter().rev() {
            if let Some(u) = &event.pre_unitary {
                let m = u.inverse().conjugate(state.matrix())?;
                state = validate_density(m, state.tol())?;
            }
        }
        Ok(state)
    }
}
