//! The `verify` command: a named battery of invariant checks spanning the
//! whole stack. Deterministic residual checks run against `tolerance`;
//! Monte Carlo checks run against fixed statistical bounds.

use std::collections::BTreeMap;

use biased_collapse_core::haar::{twirl_error, twirl_estimate, unknown_reason_expectation};
use biased_collapse_core::log::EventLog;
use biased_collapse_core::matrix::{Complex64, Matrix};
use biased_collapse_core::measure::{born_probability, luders_update, Outcome};
use biased_collapse_core::policy::{biased_conditional_expectation, ChoicePolicy, RngSeed};
use biased_collapse_core::random::{random_density, random_product_density, random_projector};
use biased_collapse_core::scenario::{TrialSpec, TwoLabScenario};
use biased_collapse_core::state::{
    validate_density, validate_projector, validate_unitary, DensityMatrix, Projector, DEFAULT_TOL,
};

use crate::error::CliError;
use crate::report::{ReportFile, Row};

/// Monte Carlo bound for the 20k-sample twirl checks.
const TWIRL_BOUND: f64 = 0.02;
/// Binomial 4-sigma bound for 100k orthodox draws at q = 1/2.
const SAMPLING_BOUND: f64 = 0.0063;
/// z-score bound for trial-model agreement.
const Z_BOUND: f64 = 4.0;

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: String,
    pub observed: f64,
    pub bound: f64,
    pub n: u64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.observed <= self.bound
    }
}

fn epr_fixtures() -> Result<(DensityMatrix, Projector, Projector), CliError> {
    let p = validate_projector(
        Matrix::basis_projector(2, 0).tensor(&Matrix::identity(2)),
        DEFAULT_TOL,
    )?;
    let q = validate_projector(
        Matrix::identity(2).tensor(&Matrix::basis_projector(2, 0)),
        DEFAULT_TOL,
    )?;
    let state = biased_collapse_core::build_correlated_state(&p, &q)?;
    Ok((state, p, q))
}

fn check_no_signaling(tolerance: f64, seed: u64) -> Result<CheckOutcome, CliError> {
    let mut rng = RngSeed(seed).stream_rng(0);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let rho = random_density(4, DEFAULT_TOL, &mut rng);
        let p = validate_projector(
            random_projector(2, 1, &mut rng)
                .matrix()
                .tensor(&Matrix::identity(2)),
            DEFAULT_TOL,
        )?;
        let q_local = random_projector(2, 1, &mut rng);
        let q = validate_projector(
            Matrix::identity(2).tensor(q_local.matrix()),
            DEFAULT_TOL,
        )?;
        let q1 = validate_projector(
            Matrix::identity(2).tensor(q_local.complement().matrix()),
            DEFAULT_TOL,
        )?;
        let lab = TwoLabScenario::new(
            rho,
            p,
            vec![
                ("q".to_string(), Some(q)),
                ("q1".to_string(), Some(q1)),
                ("none".to_string(), None),
            ],
            ChoicePolicy::Orthodox,
        )?;
        worst = worst.max(lab.signaling_gap()?);
    }
    Ok(CheckOutcome {
        name: "no_signaling_orthodox".into(),
        observed: worst,
        bound: tolerance,
        n: 100,
    })
}

fn check_extreme_bias(tolerance: f64) -> Result<CheckOutcome, CliError> {
    let (state, p, q) = epr_fixtures()?;
    let conditional = biased_conditional_expectation(&state, &p, &q)?;
    let unconditioned = born_probability(&state, &p)?;
    let observed = conditional.abs().max((unconditioned - 0.5).abs());
    Ok(CheckOutcome {
        name: "extreme_bias_conditional".into(),
        observed,
        bound: tolerance,
        n: 1,
    })
}

fn check_deterministic_gap(tolerance: f64, seed: u64) -> Result<CheckOutcome, CliError> {
    let lab = TwoLabScenario::correlated_qubits(
        ChoicePolicy::Deterministic(Outcome::Yes),
        &["q", "none"],
    )?;
    let mut observed = (lab.signaling_gap()? - 0.5).abs();
    let mut rng = RngSeed(seed).stream_rng(1);
    for _ in 0..50 {
        let rho = random_product_density(&[2, 2], DEFAULT_TOL, &mut rng);
        let p = validate_projector(
            random_projector(2, 1, &mut rng)
                .matrix()
                .tensor(&Matrix::identity(2)),
            DEFAULT_TOL,
        )?;
        let q = validate_projector(
            Matrix::identity(2).tensor(random_projector(2, 1, &mut rng).matrix()),
            DEFAULT_TOL,
        )?;
        let product_lab = TwoLabScenario::new(
            rho,
            p,
            vec![("q".to_string(), Some(q)), ("none".to_string(), None)],
            ChoicePolicy::Deterministic(Outcome::Yes),
        )?;
        observed = observed.max(product_lab.signaling_gap()?);
    }
    Ok(CheckOutcome {
        name: "deterministic_signaling_gap".into(),
        observed,
        bound: tolerance,
        n: 51,
    })
}

fn check_twirl(seed: u64) -> Result<CheckOutcome, CliError> {
    let n_samples = 20_000usize;
    let mut observed = 0.0f64;
    for dim in [2usize, 4] {
        let q = validate_projector(Matrix::basis_projector(dim, 0), DEFAULT_TOL)?;
        for stream in 0..5u64 {
            let mut rng = RngSeed(seed).stream_rng(10 + stream + dim as u64 * 100);
            let est = twirl_estimate(&q, n_samples, &mut rng);
            observed = observed.max(twirl_error(&q, &est));
        }
    }
    Ok(CheckOutcome {
        name: "haar_twirl_convergence".into(),
        observed,
        bound: TWIRL_BOUND,
        n: (n_samples * 10) as u64,
    })
}

fn check_unknown_reason(seed: u64) -> Result<CheckOutcome, CliError> {
    let (state, p, q) = epr_fixtures()?;
    let born = born_probability(&state, &p)?;
    let n_samples = 20_000usize;
    let mut observed = 0.0f64;
    for stream in 0..5u64 {
        let mut rng = RngSeed(seed).stream_rng(20 + stream);
        let est = unknown_reason_expectation(&state, &p, &q, n_samples, &mut rng);
        observed = observed.max((est - born).abs());
    }
    Ok(CheckOutcome {
        name: "unknown_reason_recovery".into(),
        observed,
        bound: TWIRL_BOUND,
        n: (n_samples * 5) as u64,
    })
}

fn check_sampling_fidelity(seed: u64) -> Result<CheckOutcome, CliError> {
    let (state, p, _) = epr_fixtures()?;
    let n = 100_000u64;
    let mut rng = RngSeed(seed).stream_rng(30);
    let mut yes = 0u64;
    for _ in 0..n {
        if ChoicePolicy::Orthodox.sample(&state, &p, &mut rng)? == Outcome::Yes {
            yes += 1;
        }
    }
    Ok(CheckOutcome {
        name: "orthodox_sampling_fidelity".into(),
        observed: (yes as f64 / n as f64 - 0.5).abs(),
        bound: SAMPLING_BOUND,
        n,
    })
}

fn check_trial_nulls(seed: u64) -> Result<CheckOutcome, CliError> {
    let n_trials = 10_000u64;
    let mut observed = 0.0f64;
    let reports = [
        TrialSpec::feeling_future(1.0, n_trials, RngSeed(seed))?.run()?,
        TrialSpec::avoidance(1.0, n_trials, RngSeed(seed))?.run()?,
        TrialSpec::priming(1.0, n_trials, 40.0, RngSeed(seed))?.run()?,
    ];
    for report in &reports {
        for row in &report.rows {
            if row.stderr > 0.0 {
                observed = observed.max((row.empirical - row.analytic).abs() / row.stderr);
            }
        }
    }
    Ok(CheckOutcome {
        name: "trial_model_nulls".into(),
        observed,
        bound: Z_BOUND,
        n: 3 * n_trials,
    })
}

fn check_measurement_calculus(tolerance: f64, seed: u64) -> Result<CheckOutcome, CliError> {
    let mut rng = RngSeed(seed).stream_rng(40);
    let mut observed = 0.0f64;
    for i in 0..100 {
        let dim = 2 + i % 3;
        let rho = random_density(dim, DEFAULT_TOL, &mut rng);
        let p = random_projector(dim, 1 + i % dim, &mut rng);
        let yes = born_probability(&rho, &p)?;
        let no = born_probability(&rho, &p.complement())?;
        observed = observed.max((yes + no - 1.0).abs());
        if yes >= 1e-6 {
            let collapsed = luders_update(&rho, &p, Outcome::Yes)?;
            observed = observed.max((born_probability(&collapsed, &p)? - 1.0).abs());
            if validate_density(collapsed.matrix().clone(), DEFAULT_TOL).is_err() {
                observed = f64::INFINITY;
            }
        }
    }
    Ok(CheckOutcome {
        name: "measurement_calculus".into(),
        observed,
        bound: tolerance,
        n: 100,
    })
}

fn check_effective_history(tolerance: f64, seed: u64) -> Result<CheckOutcome, CliError> {
    let (state, p, _) = epr_fixtures()?;
    let mut observed = 0.0f64;

    // Identity evolution: the effective past equals the collapsed state and
    // sits 1/sqrt(2) away from the recorded initial state.
    let mut rng = RngSeed(seed).stream_rng(50);
    let log = EventLog::new(state.clone());
    let (_, log) = log.pose_question(&p, &ChoicePolicy::Deterministic(Outcome::Yes), &mut rng, None)?;
    let past = log.effective_history(0)?;
    observed = observed.max(
        past.matrix()
            .max_abs_diff(&Matrix::basis_projector(4, 1))?,
    );
    let recorded = log.initial_state();
    let dist = past.matrix().frobenius_distance(recorded.matrix())?;
    observed = observed.max((dist - std::f64::consts::FRAC_1_SQRT_2).abs());

    // Nontrivial evolution: forward-evolving the effective past through the
    // logged unitary must land exactly on the current state.
    let theta = 0.6f64;
    let rot = Matrix::new(
        2,
        2,
        vec![
            Complex64::new(theta.cos(), 0.0),
            Complex64::new(-theta.sin(), 0.0),
            Complex64::new(theta.sin(), 0.0),
            Complex64::new(theta.cos(), 0.0),
        ],
    )?;
    let u = validate_unitary(rot.tensor(&Matrix::identity(2)), DEFAULT_TOL)?;
    let log = EventLog::new(state);
    let (_, log) = log.pose_question(&p, &ChoicePolicy::Orthodox, &mut rng, Some(u.clone()))?;
    let past = log.effective_history(0)?;
    let forward = u.conjugate(past.matrix())?;
    observed = observed.max(forward.max_abs_diff(log.current_state().matrix())?);

    Ok(CheckOutcome {
        name: "effective_history".into(),
        observed,
        bound: tolerance,
        n: 2,
    })
}

/// Runs the whole battery. The boolean is true when every check passed.
pub fn verify_suite(tolerance: f64, seed: u64) -> Result<(Vec<CheckOutcome>, bool), CliError> {
    let outcomes = vec![
        check_no_signaling(tolerance, seed)?,
        check_extreme_bias(tolerance)?,
        check_deterministic_gap(tolerance, seed)?,
        check_twirl(seed)?,
        check_unknown_reason(seed)?,
        check_sampling_fidelity(seed)?,
        check_trial_nulls(seed)?,
        check_measurement_calculus(tolerance, seed)?,
        check_effective_history(tolerance, seed)?,
    ];
    let all_passed = outcomes.iter().all(CheckOutcome::passed);
    Ok((outcomes, all_passed))
}

/// Report rows: analytic column holds the bound, empirical the observation.
pub fn verify_report(
    outcomes: &[CheckOutcome],
    tolerance: f64,
    seed: u64,
) -> ReportFile {
    let rows = outcomes
        .iter()
        .map(|c| Row {
            label: c.name.clone(),
            analytic: c.bound,
            empirical: c.observed,
            stderr: 0.0,
            n: c.n,
        })
        .collect();
    let mut tolerances = BTreeMap::new();
    tolerances.insert("residual_tolerance".to_string(), tolerance);
    tolerances.insert("twirl_bound".to_string(), TWIRL_BOUND);
    tolerances.insert("sampling_bound".to_string(), SAMPLING_BOUND);
    tolerances.insert("z_bound".to_string(), Z_BOUND);
    ReportFile::new("verify", seed, tolerances, rows)
}
