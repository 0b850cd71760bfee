//! Density-matrix simulator of projective measurement in which the choice
//! of outcome is a pluggable policy.
//!
//! The orthodox policy draws outcomes by Born-rule chance. A biased policy
//! reweights the Born probabilities by positive valence weights, and a
//! deterministic policy forces one answer. On entangled states, any
//! departure from the orthodox rule opens a signaling gap between far-apart
//! labs and rewrites stored records through the collapse, an effect the
//! scenario module packages as runnable trial models. Averaging the biased
//! rule over a Haar-random, unknown favored question erases the departure
//! and restores ordinary Born statistics, which the twirling estimators
//! demonstrate numerically.
//!
//! The crate is `no_std` (with `alloc`); everything is a pure value and
//! safe to share across threads. IO, file formats, and the command-line
//! front end live in the companion `biased-collapse` crate.

#![no_std]

extern crate alloc;

#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod error;
mod eigen;
pub mod haar;
pub mod log;
pub mod matrix;
pub mod measure;
pub mod policy;
pub mod random;
pub mod scenario;
pub mod state;

pub use error::{Error, Result};
pub use haar::{sample_haar_unitary, twirl_estimate, unknown_reason_expectation};
pub use log::{EventLog, ProcessEvent};
pub use matrix::{Complex64, Matrix};
pub use measure::{born_probability, decompose_multichoice, luders_update, Outcome, Partition};
pub use policy::{biased_conditional_expectation, ChoicePolicy, RngSeed};
pub use scenario::{
    build_correlated_state, record_correlation, Experiment, ReportRow, ScenarioReport,
    TrialSpec, TwoLabScenario,
};
pub use state::{
    validate_density, validate_projector, validate_unitary, DensityMatrix, Projector,
    UnitaryStep, DEFAULT_TOL,
};
