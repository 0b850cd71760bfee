//! Dense complex matrices: adjoints, products, traces, tensor products,
//! partial traces, and the Frobenius metric.
//!
//! Storage is row-major `Vec<Complex64>`. Dimensions stay at desk scale
//! (the library is tuned for systems of a few qubits), so nothing here is
//! blocked, sparse, or parallel.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Scalar type for all operator entries.
pub type Complex64 = num_complex::Complex<f64>;

pub const C_ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub const C_ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl Matrix {
    /// Builds a matrix from row-major entries, rejecting length mismatches
    /// and non-finite values.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::EntryCountMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        for (k, z) in entries.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFiniteEntry {
                    row: k / cols,
                    col: k % cols,
                });
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from row-major real values.
    pub fn from_real(rows: usize, cols: usize, values: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![C_ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = C_ONE;
        }
        m
    }

    /// Diagonal matrix from real diagonal values.
    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m.entries[i * n + i] = Complex64::new(v, 0.0);
        }
        m
    }

    /// Rank-1 projector `|k⟩⟨k|` on the computational basis state `k`.
    pub fn basis_projector(dim: usize, k: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        m.entries[k * dim + k] = C_ONE;
        m
    }

    /// Outer product `v v†` of a (not necessarily normalized) vector.
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.entries[i * n + j] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.cols + col] = value;
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).conj();
            }
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a_ik = self.get(i, k);
                if a_ik == C_ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a_ik * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, factor: Complex64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Matrix {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Sum of the diagonal entries.
    pub fn trace(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    /// Kronecker product `self ⊗ other`. Subsystem 0 is the leftmost factor.
    pub fn tensor(&self, other: &Matrix) -> Matrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Matrix::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a_ij = self.get(i, j);
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.entries[(i * other.rows + k) * cols + (j * other.cols + l)] =
                            a_ij * other.get(k, l);
                    }
                }
            }
        }
        out
    }

    /// Reduces a multipartite operator to the subsystems listed in `keep`,
    /// summing out the rest in the computational basis.
    ///
    /// `dims` lists the subsystem dimensions with index 0 the leftmost tensor
    /// factor; `keep` must be strictly increasing. An empty `keep` yields the
    /// 1x1 matrix holding the full trace.
    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let product: usize = dims.iter().product();
        if product != self.rows || dims.contains(&0) {
            return Err(Error::BadFactorization {
                matrix_dim: self.rows,
                product,
            });
        }
        for (pos, &k) in keep.iter().enumerate() {
            if k >= dims.len() || (pos > 0 && keep[pos - 1] >= k) {
                return Err(Error::InvalidSubsystem {
                    index: k,
                    count: dims.len(),
                });
            }
        }

        let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
        let kept_dims: Vec<usize> = keep.iter().map(|&i| dims[i]).collect();
        let traced_dims: Vec<usize> = traced.iter().map(|&i| dims[i]).collect();
        let out_dim: usize = kept_dims.iter().product();
        let traced_total: usize = traced_dims.iter().product();

        // Strides of each subsystem in the row-major flat index.
        let mut strides = vec![1usize; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }

        let offset = |subsystems: &[usize], subsystem_dims: &[usize], mut flat: usize| -> usize {
            let mut total = 0;
            for pos in (0..subsystems.len()).rev() {
                let digit = flat % subsystem_dims[pos];
                flat /= subsystem_dims[pos];
                total += digit * strides[subsystems[pos]];
            }
            total
        };

        let mut out = Matrix::zeros(out_dim, out_dim);
        for r in 0..out_dim {
            let row_base = offset(keep, &kept_dims, r);
            for c in 0..out_dim {
                let col_base = offset(keep, &kept_dims, c);
                let mut sum = C_ZERO;
                for t in 0..traced_total {
                    let t_off = offset(&traced, &traced_dims, t);
                    sum += self.get(row_base + t_off, col_base + t_off);
                }
                out.set(r, c, sum);
            }
        }
        Ok(out)
    }

    /// Square root of the summed squared moduli of entry differences.
    pub fn frobenius_distance(&self, other: &Matrix) -> Result<f64> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let sum: f64 = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(&a, &b)| (a - b).norm_sqr())
            .sum();
        Ok(sum.sqrt())
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix) -> Result<f64> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest deviation of `self` from its own conjugate transpose.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..=i.min(self.cols.saturating_sub(1)) {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Largest entry modulus of the commutator `self*other - other*self`.
    pub fn commutator_norm(&self, other: &Matrix) -> Result<f64> {
        let ab = self.matmul(other)?;
        let ba = other.matmul(self)?;
        ab.max_abs_diff(&ba)
    }
}
