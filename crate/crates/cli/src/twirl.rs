//! The `twirl` command: estimate the average of a conjugated rank-1
//! projector over random unitaries and report how close it sits to its
//! exact limit. Rows report; they do not assert.

use std::collections::BTreeMap;

use biased_collapse_core::haar::{twirl_error, twirl_estimate, unknown_reason_expectation};
use biased_collapse_core::matrix::Matrix;
use biased_collapse_core::measure::born_probability;
use biased_collapse_core::policy::RngSeed;
use biased_collapse_core::state::{validate_density, validate_projector, DEFAULT_TOL};

use crate::error::CliError;
use crate::report::{ReportFile, Row};

pub fn twirl_report(dim: usize, n_samples: usize, seed: u64) -> Result<ReportFile, CliError> {
    let q = validate_projector(Matrix::basis_projector(dim, dim - 1), DEFAULT_TOL)?;
    let p = validate_projector(Matrix::basis_projector(dim, 0), DEFAULT_TOL)?;
    // Fixed full-rank test state with an uneven spectrum.
    let weights: Vec<f64> = (1..=dim).map(|k| k as f64).collect();
    let total: f64 = weights.iter().sum();
    let diag: Vec<f64> = weights.iter().map(|w| w / total).collect();
    let rho = validate_density(Matrix::diagonal(&diag), DEFAULT_TOL)?;

    let estimate = twirl_estimate(&q, n_samples, &mut RngSeed(seed).stream_rng(0));
    let frobenius = twirl_error(&q, &estimate);
    let trace_error = (estimate.trace()?.re - q.rank() as f64).abs();

    let expectation =
        unknown_reason_expectation(&rho, &p, &q, n_samples, &mut RngSeed(seed).stream_rng(1));
    let born = born_probability(&rho, &p)?;
    let n = n_samples as u64;

    let rows = vec![
        Row {
            label: "twirl_frobenius_error".into(),
            analytic: 0.0,
            empirical: frobenius,
            stderr: 0.0,
            n,
        },
        Row {
            label: "twirl_trace_error".into(),
            analytic: 0.0,
            empirical: trace_error,
            stderr: 0.0,
            n,
        },
        Row {
            label: "unknown_reason_expectation".into(),
            analytic: born,
            empirical: expectation,
            stderr: 0.0,
            n,
        },
        Row {
            label: "unknown_reason_error".into(),
            analytic: 0.0,
            empirical: (expectation - born).abs(),
            stderr: 0.0,
            n,
        },
    ];
    Ok(ReportFile::new("twirl", seed, BTreeMap::new(), rows))
}
