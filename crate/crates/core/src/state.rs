//! Validated quantum objects: density matrices, projectors, and unitary
//! steps.
//!
//! Construction goes through the `validate_*` functions, which name the
//! violated invariant on failure. After validation the wrapped matrix is
//! immutable, so downstream code can rely on the invariants without
//! re-checking.

use crate::eigen::min_eigenvalue;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Default validation tolerance for structural checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Quantum state: Hermitian, positive semidefinite, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: Matrix,
    dim: usize,
    tol: f64,
}

impl DensityMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }
}

/// Yes/No question operator: Hermitian and idempotent.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    mat: Matrix,
    dim: usize,
    rank: usize,
}

impl Projector {
    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The complementary question `I - P`, answering "No" where `P` answers
    /// "Yes".
    pub fn complement(&self) -> Projector {
        let mat = Matrix::identity(self.dim)
            .sub(&self.mat)
            .expect("same dimension");
        Projector {
            mat,
            dim: self.dim,
            rank: self.dim - self.rank,
        }
    }
}

/// One step of unitary evolution between measurements.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryStep {
    mat: Matrix,
    dim: usize,
}

impl UnitaryStep {
    /// Wraps a matrix that is unitary by construction, skipping validation.
    pub(crate) fn trusted(mat: Matrix, dim: usize) -> Self {
        UnitaryStep { mat, dim }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The inverse evolution `U†`.
    pub fn inverse(&self) -> UnitaryStep {
        UnitaryStep {
            mat: self.mat.adjoint(),
            dim: self.dim,
        }
    }

    /// Conjugation `U m U†`.
    pub fn conjugate(&self, m: &Matrix) -> Result<Matrix> {
        self.mat.matmul(m)?.matmul(&self.mat.adjoint())
    }
}

fn require_square(m: &Matrix) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(m.rows())
}

/// Checks Hermiticity, positive semidefiniteness, and unit trace, in that
/// order, returning the validated state.
pub fn validate_density(m: Matrix, tol: f64) -> Result<DensityMatrix> {
    let dim = require_square(&m)?;
    let herm = m.hermiticity_deviation();
    if herm > tol {
        return Err(Error::NotHermitian { deviation: herm });
    }
    let tr = m.trace().expect("square");
    if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
        return Err(Error::TraceNotOne { trace: tr.re });
    }
    let min_ev = min_eigenvalue(&m);
    if min_ev < -tol {
        return Err(Error::NotPositive {
            min_eigenvalue: min_ev,
        });
    }
    Ok(DensityMatrix { mat: m, dim, tol })
}

/// Checks Hermiticity and idempotence; the rank is the rounded trace.
pub fn validate_projector(m: Matrix, tol: f64) -> Result<Projector> {
    let dim = require_square(&m)?;
    let herm = m.hermiticity_deviation();
    if herm > tol {
        return Err(Error::NotHermitian { deviation: herm });
    }
    let squared = m.matmul(&m).expect("square");
    let idem = squared.max_abs_diff(&m).expect("same dims");
    if idem > tol {
        return Err(Error::NotIdempotent { deviation: idem });
    }
    let rank = m.trace().expect("square").re.round();
    Ok(Projector {
        mat: m,
        dim,
        rank: rank as usize,
    })
}

/// Checks `U† U = I` within tolerance.
pub fn validate_unitary(m: Matrix, tol: f64) -> Result<UnitaryStep> {
    let dim = require_square(&m)?;
    let gram = m.adjoint().matmul(&m).expect("square");
    let dev = gram.max_abs_diff(&Matrix::identity(dim)).expect("same dims");
    if dev > tol {
        return Err(Error::NotUnitary { deviation: dev });
    }
    Ok(UnitaryStep { mat: m, dim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Complex64;
    use alloc::vec;

    #[test]
    fn maximally_mixed_qubit_is_valid() {
        let rho = validate_density(Matrix::identity(2).scale_re(0.5), 1e-9).unwrap();
        assert_eq!(rho.dim(), 2);
    }

    #[test]
    fn correlated_two_qubit_state_is_valid() {
        let m = Matrix::basis_projector(4, 1)
            .add(&Matrix::basis_projector(4, 2))
            .unwrap()
            .scale_re(0.5);
        assert!(validate_density(m, 1e-9).is_ok());
    }

    #[test]
    fn negative_eigenvalue_rejected() {
        let m = Matrix::diagonal(&[1.2, -0.2]);
        assert!(matches!(
            validate_density(m, 1e-9),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn wrong_trace_rejected() {
        let m = Matrix::identity(2);
        assert!(matches!(
            validate_density(m, 1e-9),
            Err(Error::TraceNotOne { .. })
        ));
    }

    #[test]
    fn non_hermitian_density_rejected() {
        let m = Matrix::new(
            2,
            2,
            vec![
                Complex64::new(0.5, 0.0),
                Complex64::new(0.5, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.5, 0.0),
            ],
        )
        .unwrap();
        assert!(matches!(
            validate_density(m, 1e-9),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn identity_projector_has_full_rank() {
        let p = validate_projector(Matrix::identity(2), 1e-9).unwrap();
        assert_eq!(p.rank(), 2);
    }

    #[test]
    fn local_projector_rank_is_trace() {
        let p = Matrix::basis_projector(2, 0).tensor(&Matrix::identity(2));
        let p = validate_projector(p, 1e-9).unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.dim(), 4);
    }

    #[test]
    fn non_hermitian_projector_rejected() {
        let m = Matrix::new(
            2,
            2,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        assert!(matches!(
            validate_projector(m, 1e-9),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn non_idempotent_rejected() {
        let m = Matrix::identity(2).scale_re(0.5);
        assert!(matches!(
            validate_projector(m, 1e-9),
            Err(Error::NotIdempotent { .. })
        ));
    }

    #[test]
    fn complement_involution_and_extremes() {
        let p = validate_projector(Matrix::basis_projector(2, 0), 1e-9).unwrap();
        assert_eq!(p.complement().complement(), p);
        assert_eq!(
            p.complement().matrix(),
            &Matrix::basis_projector(2, 1)
        );
        let full = validate_projector(Matrix::identity(3), 1e-9).unwrap();
        assert_eq!(full.complement().rank(), 0);
        assert_eq!(full.complement().matrix(), &Matrix::zeros(3, 3));
    }

    #[test]
    fn unitary_validation() {
        let h = Matrix::from_real(
            2,
            2,
            &[
                core::f64::consts::FRAC_1_SQRT_2,
                core::f64::consts::FRAC_1_SQRT_2,
                core::f64::consts::FRAC_1_SQRT_2,
                -core::f64::consts::FRAC_1_SQRT_2,
            ],
        )
        .unwrap();
        let u = validate_unitary(h.clone(), 1e-9).unwrap();
        let id = u
            .conjugate(&Matrix::identity(2))
            .unwrap()
            .max_abs_diff(&Matrix::identity(2))
            .unwrap();
        assert!(id < 1e-12);
        assert!(matches!(
            validate_unitary(Matrix::identity(2).scale_re(2.0), 1e-9),
            Err(Error::NotUnitary { .. })
        ));
        // Inverse really undoes the evolution.
        let rho = Matrix::basis_projector(2, 0);
        let evolved = u.conjugate(&rho).unwrap();
        let back = u.inverse().conjugate(&evolved).unwrap();
        assert!(back.max_abs_diff(&rho).unwrap() < 1e-12);
    }
}
