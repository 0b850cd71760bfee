//! Error type shared by every layer of the simulator.

use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong when building operators, validating quantum
/// objects, or running a measurement sequence.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two operands have incompatible shapes.
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    /// An operation requiring a square matrix got a rectangular one.
    NotSquare { rows: usize, cols: usize },
    /// Entry buffer length does not match `rows * cols`.
    EntryCountMismatch { expected: usize, got: usize },
    /// A matrix entry is NaN or infinite.
    NonFiniteEntry { row: usize, col: usize },
    /// Product of the subsystem dimensions does not factor the matrix dimension.
    BadFactorization { matrix_dim: usize, product: usize },
    /// A subsystem index is out of range or repeated.
    InvalidSubsystem { index: usize, count: usize },
    /// Matrix differs from its conjugate transpose by more than the tolerance.
    NotHermitian { deviation: f64 },
    /// Smallest eigenvalue lies below minus the tolerance.
    NotPositive { min_eigenvalue: f64 },
    /// Trace differs from one by more than the tolerance.
    TraceNotOne { trace: f64 },
    /// `P * P` differs from `P` by more than the tolerance.
    NotIdempotent { deviation: f64 },
    /// `U† U` differs from the identity by more than the tolerance.
    NotUnitary { deviation: f64 },
    /// A quantity that must be real carries an imaginary part above tolerance.
    ImaginaryPart { imaginary: f64 },
    /// Conditioning on an outcome whose probability is numerically zero.
    ZeroProbabilityOutcome { probability: f64 },
    /// A deterministic policy demands an outcome of zero Born weight.
    ImpossibleOutcome { born_probability: f64 },
    /// A bias weight is not strictly positive and finite.
    InvalidWeight { value: f64 },
    /// Two partition members are not mutually orthogonal.
    NotOrthogonal {
        first: usize,
        second: usize,
        deviation: f64,
    },
    /// Partition members do not sum to the identity.
    NotComplete { deviation: f64 },
    /// Two question operators fail to commute within tolerance.
    NonCommuting { deviation: f64 },
    /// Conditioning operator has numerically zero overlap with the state.
    ZeroConditioning { trace: f64 },
    /// A state construction produced an operator with zero trace.
    ZeroTrace,
    /// Requested process-time stage does not exist in the log.
    StageOutOfRange { stage: usize, latest: usize },
    /// A scenario setting label is not defined.
    UnknownSetting { label: String },
    /// A gap computation needs at least two settings.
    NotEnoughSettings { count: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { left, right } => write!(
                f,
                "dimension mismatch: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix is not square: {rows}x{cols}")
            }
            Error::EntryCountMismatch { expected, got } => {
                write!(f, "expected {expected} entries, got {got}")
            }
            Error::NonFiniteEntry { row, col } => {
                write!(f, "non-finite entry at ({row}, {col})")
            }
            Error::BadFactorization {
                matrix_dim,
                product,
            } => write!(
                f,
                "subsystem dimensions multiply to {product}, matrix dimension is {matrix_dim}"
            ),
            Error::InvalidSubsystem { index, count } => {
                write!(f, "invalid subsystem index {index} (of {count})")
            }
            Error::NotHermitian { deviation } => {
                write!(f, "not Hermitian (deviation {deviation:e})")
            }
            Error::NotPositive { min_eigenvalue } => write!(
                f,
                "not positive semidefinite (min eigenvalue {min_eigenvalue:e})"
            ),
            Error::TraceNotOne { trace } => write!(f, "trace is not 1 (got {trace})"),
            Error::NotIdempotent { deviation } => {
                write!(f, "not idempotent (deviation {deviation:e})")
            }
            Error::NotUnitary { deviation } => {
                write!(f, "not unitary (deviation {deviation:e})")
            }
            Error::ImaginaryPart { imaginary } => {
                write!(f, "imaginary part {imaginary:e} exceeds tolerance")
            }
            Error::ZeroProbabilityOutcome { probability } => {
                write!(f, "outcome has numerically zero probability ({probability:e})")
            }
            Error::ImpossibleOutcome { born_probability } => write!(
                f,
                "deterministic outcome has zero Born probability ({born_probability:e})"
            ),
            Error::InvalidWeight { value } => {
                write!(f, "bias weight must be strictly positive and finite, got {value}")
            }
            Error::NotOrthogonal {
                first,
                second,
                deviation,
            } => write!(
                f,
                "partition members {first} and {second} are not orthogonal (deviation {deviation:e})"
            ),
            Error::NotComplete { deviation } => write!(
                f,
                "partition does not sum to the identity (deviation {deviation:e})"
            ),
            Error::NonCommuting { deviation } => {
                write!(f, "questions do not commute (deviation {deviation:e})")
            }
            Error::ZeroConditioning { trace } => {
                write!(f, "conditioning trace is numerically zero ({trace:e})")
            }
            Error::ZeroTrace => write!(f, "constructed operator has zero trace"),
            Error::StageOutOfRange { stage, latest } => {
                write!(f, "stage {stage} out of range (latest is {latest})")
            }
            Error::UnknownSetting { label } => write!(f, "unknown setting '{label}'"),
            Error::NotEnoughSettings { count } => {
                write!(f, "need at least two settings, got {count}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
