//! Orthodox measurement calculus: Born probabilities, Lüders collapse, and
//! multi-outcome partitions built from mutually orthogonal projectors.

use alloc::vec::Vec;
use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::state::{validate_density, DensityMatrix, Projector};

/// Probability below which an outcome is treated as impossible. Collapsing
/// onto such an outcome would divide by a numerically meaningless trace.
pub const ZERO_PROBABILITY: f64 = 1e-12;

/// Answer to a posed Yes/No question.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Yes,
    No,
}

impl Outcome {
    pub fn flipped(self) -> Outcome {
        match self {
            Outcome::Yes => Outcome::No,
            Outcome::No => Outcome::Yes,
        }
    }
}

/// Probability of answer "Yes": the real part of `Tr(P rho)`, clamped to
/// [0, 1]. An imaginary part above the state tolerance is an error.
pub fn born_probability(rho: &DensityMatrix, p: &Projector) -> Result<f64> {
    if rho.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            left: (rho.dim(), rho.dim()),
            right: (p.dim(), p.dim()),
        });
    }
    let tr = p.matrix().matmul(rho.matrix())?.trace()?;
    if tr.im.abs() > rho.tol() {
        return Err(Error::ImaginaryPart { imaginary: tr.im });
    }
    Ok(tr.re.clamp(0.0, 1.0))
}

/// Effective projector for the requested outcome: `P` for Yes, `I - P` for
/// No.
fn outcome_projector(p: &Projector, outcome: Outcome) -> Projector {
    match outcome {
        Outcome::Yes => p.clone(),
        Outcome::No => p.complement(),
    }
}

/// Collapse: `E rho E / Tr(E rho E)` with `E` the outcome's projector.
///
/// Outcomes of numerically zero probability are rejected rather than
/// renormalized.
pub fn luders_update(
    rho: &DensityMatrix,
    p: &Projector,
    outcome: Outcome,
) -> Result<DensityMatrix> {
    if rho.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            left: (rho.dim(), rho.dim()),
            right: (p.dim(), p.dim()),
        });
    }
    let e = outcome_projector(p, outcome);
    let sandwiched = e.matrix().matmul(rho.matrix())?.matmul(e.matrix())?;
    let norm = sandwiched.trace()?.re;
    if norm < ZERO_PROBABILITY {
        return Err(Error::ZeroProbabilityOutcome { probability: norm });
    }
    validate_density(sandwiched.scale_re(1.0 / norm), rho.tol())
}

/// Exhaustive partition of the identity into mutually orthogonal questions,
/// the form multi-outcome observations take here.
#[derive(Debug, Clone)]
pub struct Partition {
    parts: Vec<Projector>,
    dim: usize,
}

impl Partition {
    pub fn parts(&self) -> &[Projector] {
        &self.parts
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Born probability of each cell.
    pub fn probabilities(&self, rho: &DensityMatrix) -> Result<Vec<f64>> {
        self.parts.iter().map(|p| born_probability(rho, p)).collect()
    }

    /// Samples a cell index as a categorical draw on one uniform variate.
    pub fn sample_index(&self, rho: &DensityMatrix, rng: &mut impl Rng) -> Result<usize> {
        let probs = self.probabilities(rho)?;
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        for (i, &p) in probs.iter().enumerate() {
            acc += p;
            if u < acc {
                return Ok(i);
            }
        }
        Ok(probs.len() - 1)
    }
}

const DEFAULT_PARTITION_TOL: f64 = 1e-9;

/// Validates that `parts` are pairwise orthogonal and sum to the identity.
pub fn decompose_multichoice(parts: Vec<Projector>) -> Result<Partition> {
    let dim = match parts.first() {
        Some(p) => p.dim(),
        None => return Err(Error::NotComplete { deviation: 1.0 }),
    };
    let mut sum = Matrix::zeros(dim, dim);
    for (i, p) in parts.iter().enumerate() {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: (dim, dim),
                right: (p.dim(), p.dim()),
            });
        }
        for (j, q) in parts.iter().enumerate().skip(i + 1) {
            let prod = p.matrix().matmul(q.matrix())?;
            let dev = prod.max_abs_diff(&Matrix::zeros(dim, dim))?;
            if dev > DEFAULT_PARTITION_TOL {
                return Err(Error::NotOrthogonal {
                    first: i,
                    second: j,
                    deviation: dev,
                });
            }
        }
        sum = sum.add(p.matrix())?;
    }
    let dev = sum.max_abs_diff(&Matrix::identity(dim))?;
    if dev > DEFAULT_PARTITION_TOL {
        return Err(Error::NotComplete { deviation: dev });
    }
    Ok(Partition { parts, dim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::validate_projector;
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qubit_zero() -> Projector {
        validate_projector(Matrix::basis_projector(2, 0), 1e-9).unwrap()
    }

    fn epr_state() -> DensityMatrix {
        let m = Matrix::basis_projector(4, 1)
            .add(&Matrix::basis_projector(4, 2))
            .unwrap()
            .scale_re(0.5);
        validate_density(m, 1e-9).unwrap()
    }

    fn local_p() -> Projector {
        validate_projector(
            Matrix::basis_projector(2, 0).tensor(&Matrix::identity(2)),
            1e-9,
        )
        .unwrap()
    }

    #[test]
    fn eigenstate_probability_is_one() {
        let rho = validate_density(Matrix::basis_projector(2, 0), 1e-9).unwrap();
        let p = qubit_zero();
        assert!((born_probability(&rho, &p).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn epr_local_probability_is_half() {
        // Brute-force trace oracle.
        let rho = epr_state();
        let p = local_p();
        let prod = p.matrix().matmul(rho.matrix()).unwrap();
        let mut oracle = 0.0;
        for i in 0..4 {
            oracle += prod.get(i, i).re;
        }
        let got = born_probability(&rho, &p).unwrap();
        assert!((got - oracle).abs() < 1e-15);
        assert!((got - 0.5).abs() < 1e-15);
    }

    #[test]
    fn identity_question_is_certain() {
        let rho = epr_state();
        let id = validate_projector(Matrix::identity(4), 1e-9).unwrap();
        assert!((born_probability(&rho, &id).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn complement_completeness() {
        let rho = epr_state();
        let p = local_p();
        let yes = born_probability(&rho, &p).unwrap();
        let no = born_probability(&rho, &p.complement()).unwrap();
        assert!((yes + no - 1.0).abs() < 1e-12);
    }

    #[test]
    fn luders_purifies_mixed_qubit() {
        let rho = validate_density(Matrix::identity(2).scale_re(0.5), 1e-9).unwrap();
        let updated = luders_update(&rho, &qubit_zero(), Outcome::Yes).unwrap();
        assert!(
            updated
                .matrix()
                .max_abs_diff(&Matrix::basis_projector(2, 0))
                .unwrap()
                < 1e-12
        );
    }

    #[test]
    fn luders_on_correlated_state() {
        // Oracle: 4x4 product and normalization done longhand.
        let rho = epr_state();
        let p = local_p();
        let sand = p
            .matrix()
            .matmul(rho.matrix())
            .unwrap()
            .matmul(p.matrix())
            .unwrap();
        let tr = sand.trace().unwrap().re;
        let oracle = sand.scale_re(1.0 / tr);
        let updated = luders_update(&rho, &p, Outcome::Yes).unwrap();
        assert!(updated.matrix().max_abs_diff(&oracle).unwrap() < 1e-14);
        assert!(
            updated
                .matrix()
                .max_abs_diff(&Matrix::basis_projector(4, 1))
                .unwrap()
                < 1e-14
        );
    }

    #[test]
    fn luders_rejects_impossible_outcome() {
        let rho = validate_density(Matrix::basis_projector(2, 0), 1e-9).unwrap();
        let p_one = validate_projector(Matrix::basis_projector(2, 1), 1e-9).unwrap();
        assert!(matches!(
            luders_update(&rho, &p_one, Outcome::Yes),
            Err(Error::ZeroProbabilityOutcome { .. })
        ));
    }

    #[test]
    fn repeated_measurement_is_stable() {
        let rho = epr_state();
        let p = local_p();
        let once = luders_update(&rho, &p, Outcome::Yes).unwrap();
        assert!((born_probability(&once, &p).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conditioning_pins_the_correlated_record() {
        // Before conditioning the remote record is 50/50; after a Yes on
        // the local question it answers Yes every time.
        let rho = epr_state();
        let p = local_p();
        let record = validate_projector(
            Matrix::identity(2).tensor(&Matrix::basis_projector(2, 1)),
            1e-9,
        )
        .unwrap();
        assert!((born_probability(&rho, &record).unwrap() - 0.5).abs() < 1e-12);
        let conditioned = luders_update(&rho, &p, Outcome::Yes).unwrap();
        assert!((born_probability(&conditioned, &record).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn computational_basis_partition() {
        let parts = vec![
            validate_projector(Matrix::basis_projector(2, 0), 1e-9).unwrap(),
            validate_projector(Matrix::basis_projector(2, 1), 1e-9).unwrap(),
        ];
        let partition = decompose_multichoice(parts).unwrap();
        assert_eq!(partition.parts().len(), 2);
    }

    #[test]
    fn binary_question_partition() {
        let p = local_p();
        let partition = decompose_multichoice(vec![p.clone(), p.complement()]).unwrap();
        let rho = epr_state();
        let probs = partition.probabilities(&rho).unwrap();
        assert!((probs[0] + probs[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn duplicate_cells_rejected() {
        let p = validate_projector(Matrix::basis_projector(2, 0), 1e-9).unwrap();
        assert!(matches!(
            decompose_multichoice(vec![p.clone(), p]),
            Err(Error::NotOrthogonal { .. })
        ));
    }

    #[test]
    fn incomplete_partition_rejected() {
        let p = validate_projector(Matrix::basis_projector(4, 0), 1e-9).unwrap();
        let q = validate_projector(Matrix::basis_projector(4, 1), 1e-9).unwrap();
        assert!(matches!(
            decompose_multichoice(vec![p, q]),
            Err(Error::NotComplete { .. })
        ));
    }

    #[test]
    fn partition_sampling_is_seed_stable() {
        let p = local_p();
        let partition = decompose_multichoice(vec![p.clone(), p.complement()]).unwrap();
        let rho = epr_state();
        let draw = |seed: u64| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..16)
                .map(|_| partition.sample_index(&rho, &mut rng).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(7), draw(7));
    }
}
