//! Seeded random quantum objects for sweeps and verification batteries.

use alloc::vec::Vec;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::haar::sample_haar_unitary;
use crate::matrix::{Complex64, Matrix};
use crate::state::{validate_density, DensityMatrix, Projector};

fn ginibre(rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    let entries: Vec<Complex64> = (0..rows * cols)
        .map(|_| {
            Complex64::new(
                rng.sample::<f64, _>(StandardNormal),
                rng.sample::<f64, _>(StandardNormal),
            )
        })
        .collect();
    Matrix::new(rows, cols, entries).expect("finite gaussian entries")
}

/// Random full-rank density matrix `G G† / Tr(G G†)`.
pub fn random_density(dim: usize, tol: f64, rng: &mut impl Rng) -> DensityMatrix {
    let g = ginibre(dim, dim, rng);
    let gram = g.matmul(&g.adjoint()).expect("square");
    let tr = gram.trace().expect("square").re;
    validate_density(gram.scale_re(1.0 / tr), tol).expect("gram matrices are valid states")
}

/// Random tensor product of independent random states, one per factor.
pub fn random_product_density(dims: &[usize], tol: f64, rng: &mut impl Rng) -> DensityMatrix {
    assert!(!dims.is_empty());
    let mut mat: Option<Matrix> = None;
    for &d in dims {
        let factor = random_density(d, tol, rng);
        mat = Some(match mat {
            None => factor.matrix().clone(),
            Some(m) => m.tensor(factor.matrix()),
        });
    }
    validate_density(mat.expect("at least one factor"), tol)
        .expect("tensor products of states are states")
}

/// Random rank-`rank` projector spanned by Haar-random orthonormal columns.
pub fn random_projector(dim: usize, rank: usize, rng: &mut impl Rng) -> Projector {
    assert!(rank <= dim);
    let u = sample_haar_unitary(dim, rng);
    let mut sum = Matrix::zeros(dim, dim);
    for j in 0..rank {
        let col: Vec<Complex64> = (0..dim).map(|i| u.matrix().get(i, j)).collect();
        sum = sum.add(&Matrix::outer(&col)).expect("same dims");
    }
    crate::state::validate_projector(sum, 1e-9).expect("haar column spans are projectors")
}
