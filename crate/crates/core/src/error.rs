use thiserror::Error;

/// Errors raised by state construction, measures and optimization.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |M - M^dag| = {residual:.3e}")]
    NotHermitian { residual: f64 },

    #[error("trace is not one: |Tr(rho) - 1| = {residual:.3e}")]
    TraceNotOne { residual: f64 },

    #[error("matrix is not positive semidefinite: most negative eigenvalue = {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("layout {dims:?} has product {product} but matrix dimension is {dim}")]
    LayoutMismatch {
        dims: Vec<usize>,
        product: usize,
        dim: usize,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("subsystem index {index} out of range for {count} subsystems")]
    SubsystemOutOfRange { index: usize, count: usize },

    #[error("subsystem {0} used twice")]
    SubsystemCollision(usize),

    #[error("empty subsystem selection")]
    EmptySelection,

    #[error("expected {expected} subsystems, found {found}")]
    WrongSubsystemCount { expected: usize, found: usize },

    #[error("state is not pure: purity = {purity:.12}")]
    NotPure { purity: f64 },

    #[error("basis is not orthonormal: residual = {residual:.3e}")]
    NotOrthonormal { residual: f64 },

    #[error("parameter {name} = {value} outside [{min}, {max}]")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("zero vector cannot be normalized")]
    ZeroVector,

    #[error("subsystem {index} has dimension {dim}; only qubits can be optimized")]
    NotQubit { index: usize, dim: usize },

    #[error("{what} disagree: {a} vs {b} (difference {diff:.3e})")]
    Inconsistent {
        what: &'static str,
        a: f64,
        b: f64,
        diff: f64,
    },

    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Whether the error reports a state that violates density-matrix invariants.
    pub fn is_invalid_state(&self) -> bool {
        matches!(
            self,
            Error::NotHermitian { .. }
                | Error::TraceNotOne { .. }
                | Error::NotPositive { .. }
                | Error::NotSquare { .. }
                | Error::LayoutMismatch { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
