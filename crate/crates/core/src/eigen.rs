//! Eigenvalue bounds for Hermitian matrices.
//!
//! A Hermitian matrix `H = A + iB` embeds into the real symmetric matrix
//! `[[A, -B], [B, A]]`, whose spectrum is that of `H` with every eigenvalue
//! doubled. Cyclic Jacobi on the embedding is plenty at desk-scale
//! dimensions and avoids any external solver.

use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::Matrix;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues of a Hermitian matrix, unsorted, one per dimension.
///
/// The input is assumed Hermitian within roundoff; only its lower triangle
/// feeds the embedding.
pub fn hermitian_eigenvalues(m: &Matrix) -> Vec<f64> {
    let dim = m.rows();
    let n = 2 * dim;
    let mut a = vec![0.0f64; n * n];
    for i in 0..dim {
        for j in 0..dim {
            let z = m.get(i, j);
            a[i * n + j] = z.re;
            a[(i + dim) * n + (j + dim)] = z.re;
            a[i * n + (j + dim)] = -z.im;
            a[(i + dim) * n + j] = z.im;
        }
    }
    let doubled = symmetric_eigenvalues(&mut a, n);
    // Pair up the doubled spectrum: sort and take every other value.
    let mut sorted = doubled;
    sorted.sort_by(|x, y| x.partial_cmp(y).unwrap_or(core::cmp::Ordering::Equal));
    (0..dim).map(|k| sorted[2 * k]).collect()
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &Matrix) -> f64 {
    hermitian_eigenvalues(m)
        .into_iter()
        .fold(f64::INFINITY, f64::min)
}

/// Cyclic Jacobi diagonalization of a real symmetric matrix stored row-major.
fn symmetric_eigenvalues(a: &mut [f64], n: usize) -> Vec<f64> {
    if n == 0 {
        return Vec::new();
    }
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() < 1e-14 * (1.0 + frobenius(a, n)) {
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() < f64::MIN_POSITIVE {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Rotate rows/columns p and q.
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

fn frobenius(a: &[f64], n: usize) -> f64 {
    a.iter().take(n * n).map(|x| x * x).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Complex64;
    use alloc::vec;

    #[test]
    fn diagonal_spectrum() {
        let m = Matrix::diagonal(&[0.25, -0.5, 1.75]);
        let mut ev = hermitian_eigenvalues(&m);
        ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert!((ev[0] + 0.5).abs() < 1e-12);
        assert!((ev[1] - 0.25).abs() < 1e-12);
        assert!((ev[2] - 1.75).abs() < 1e-12);
    }

    #[test]
    fn complex_hermitian_spectrum() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2.
        let m = Matrix::new(
            2,
            2,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(1.0, 0.0),
            ],
        )
        .unwrap();
        let mut ev = hermitian_eigenvalues(&m);
        ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert!(ev[0].abs() < 1e-12);
        assert!((ev[1] - 2.0).abs() < 1e-12);
        assert!(min_eigenvalue(&m).abs() < 1e-12);
    }

    #[test]
    fn projector_spectrum_is_zero_one() {
        let p = Matrix::basis_projector(2, 0).tensor(&Matrix::identity(2));
        let mut ev = hermitian_eigenvalues(&p);
        ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert!(ev[0].abs() < 1e-12 && ev[1].abs() < 1e-12);
        assert!((ev[2] - 1.0).abs() < 1e-12 && (ev[3] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn detects_negative_eigenvalue() {
        let m = Matrix::diagonal(&[1.2, -0.2]);
        assert!((min_eigenvalue(&m) + 0.2).abs() < 1e-12);
    }
}
