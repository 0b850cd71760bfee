//! Haar-random unitaries and twirling estimators.
//!
//! Sampling follows the Ginibre-QR recipe: fill a matrix with independent
//! standard complex Gaussians, take a QR decomposition, and multiply each
//! column of Q by the phase of the matching diagonal entry of R. The QR
//! factor alone is not invariant-distributed (Householder reflections fix
//! the diagonal phases of R arbitrarily); the phase correction restores
//! invariance, and the first-moment tests below would catch its absence.

use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::matrix::{Complex64, Matrix, C_ONE, C_ZERO};
use crate::measure::born_probability;
use crate::state::{DensityMatrix, Projector, UnitaryStep};

/// Draws a unitary distributed per the normalized invariant measure.
pub fn sample_haar_unitary(dim: usize, rng: &mut impl Rng) -> UnitaryStep {
    assert!(dim >= 1, "dimension must be at least 1");
    loop {
        let ginibre: Vec<Complex64> = (0..dim * dim)
            .map(|_| {
                Complex64::new(
                    rng.sample::<f64, _>(StandardNormal),
                    rng.sample::<f64, _>(StandardNormal),
                )
            })
            .collect();
        // Numerically rank-deficient draws are redrawn; they have
        // probability zero in exact arithmetic.
        if let Some(u) = qr_with_phase_correction(&ginibre, dim) {
            return UnitaryStep::trusted(u, dim);
        }
    }
}

/// Householder QR of a square matrix, returning `Q * diag(r_jj / |r_jj|)`.
/// Returns `None` when a pivot column is numerically zero.
fn qr_with_phase_correction(entries: &[Complex64], dim: usize) -> Option<Matrix> {
    let mut r = entries.to_vec();
    let mut q = vec![C_ZERO; dim * dim];
    for i in 0..dim {
        q[i * dim + i] = C_ONE;
    }
    let mut v = vec![C_ZERO; dim];

    for k in 0..dim {
        let norm_x = r[k * dim + k..]
            .iter()
            .step_by(dim)
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        if norm_x < 1e-150 {
            return None;
        }
        let x0 = r[k * dim + k];
        let phase0 = if x0.norm() > 0.0 { x0 / x0.norm() } else { C_ONE };
        let alpha = -phase0 * norm_x;
        for i in k..dim {
            v[i] = r[i * dim + k];
        }
        v[k] -= alpha;
        let v_norm = v[k..].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in v[k..].iter_mut() {
            *z /= v_norm;
        }
        // R <- H R on the trailing block, with H = I - 2 v v†.
        for j in k..dim {
            let w: Complex64 = (k..dim).map(|i| v[i].conj() * r[i * dim + j]).sum();
            for i in k..dim {
                r[i * dim + j] -= 2.0 * v[i] * w;
            }
        }
        // Q <- Q H.
        for i in 0..dim {
            let w: Complex64 = (k..dim).map(|j| q[i * dim + j] * v[j]).sum();
            for j in k..dim {
                q[i * dim + j] -= 2.0 * w * v[j].conj();
            }
        }
    }

    let mut out = Matrix::zeros(dim, dim);
    for j in 0..dim {
        let r_jj = r[j * dim + j];
        let phase = r_jj / r_jj.norm();
        for i in 0..dim {
            out.set(i, j, q[i * dim + j] * phase);
        }
    }
    Some(out)
}

/// Monte Carlo average `(1/N) sum_i U_i Q U_i†` over Haar samples.
pub fn twirl_estimate(q: &Projector, n_samples: usize, rng: &mut impl Rng) -> Matrix {
    assert!(n_samples >= 1, "need at least one sample");
    let dim = q.dim();
    let mut acc = Matrix::zeros(dim, dim);
    for _ in 0..n_samples {
        let u = sample_haar_unitary(dim, rng);
        let conj = u.conjugate(q.matrix()).expect("dims match");
        acc = acc.add(&conj).expect("dims match");
    }
    acc.scale_re(1.0 / n_samples as f64)
}

/// Haar-averaged biased expectation of `P` when the favored question is
/// unknown: the ratio of the twirled joint trace to the twirled
/// conditioning trace. Converges to the plain Born value `Tr(P rho)`.
pub fn unknown_reason_expectation(
    rho: &DensityMatrix,
    p: &Projector,
    q: &Projector,
    n_samples: usize,
    rng: &mut impl Rng,
) -> f64 {
    let twirled = twirl_estimate(q, n_samples, rng);
    let conditioned = twirled.matmul(rho.matrix()).expect("dims match");
    let numerator = p
        .matrix()
        .matmul(&conditioned)
        .expect("dims match")
        .trace()
        .expect("square")
        .re;
    let denominator = conditioned.trace().expect("square").re;
    numerator / denominator
}

/// Departure of an estimated twirl from its exact limit `I * Tr(Q) / dim`.
pub fn twirl_error(q: &Projector, estimate: &Matrix) -> f64 {
    let dim = q.dim();
    let limit = Matrix::identity(dim).scale_re(q.rank() as f64 / dim as f64);
    estimate.frobenius_distance(&limit).expect("dims match")
}

/// Departure of the unknown-reason estimate from the Born value.
pub fn unknown_reason_error(rho: &DensityMatrix, p: &Projector, estimate: f64) -> f64 {
    let born = born_probability(rho, p).expect("validated inputs");
    (estimate - born).abs()
}
