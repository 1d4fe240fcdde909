use std::fmt;

/// Errors reported by grid construction and the solver kernels.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Grid counts or extents violate a precondition (odd coarse counts,
    /// fewer than two intervals, non-positive extents, impossible tiling).
    InvalidGrid(String),
    /// Two fields that must share a grid do not.
    GridMismatch(String),
    /// A sampled function produced NaN or an infinity.
    NonFinite { i: usize, j: usize, k: usize },
    /// Zero pivot in the tridiagonal elimination.
    SingularPivot(usize),
    /// Non-positive pivot in the coarse-grid factorization.
    NotPositiveDefinite(usize),
    /// The coarse grid has more interior unknowns than the direct solver cap.
    CoarseCapExceeded { unknowns: usize, cap: usize },
    /// An iterative solve hit its iteration cap before reaching tolerance.
    NoConvergence {
        what: &'static str,
        iterations: usize,
        relative_residual: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGrid(msg) => write!(f, "invalid grid: {msg}"),
            Error::GridMismatch(msg) => write!(f, "grid mismatch: {msg}"),
            Error::NonFinite { i, j, k } => {
                write!(f, "non-finite sample at node ({i}, {j}, {k})")
            }
            Error::SingularPivot(row) => write!(f, "zero pivot in tridiagonal row {row}"),
            Error::NotPositiveDefinite(row) => {
                write!(f, "non-positive pivot in factorization row {row}")
            }
            Error::CoarseCapExceeded { unknowns, cap } => write!(
                f,
                "{unknowns} interior unknowns exceed the direct-solver cap {cap}; use the CG solver"
            ),
            Error::NoConvergence {
                what,
                iterations,
                relative_residual,
            } => write!(
                f,
                "{what} did not converge after {iterations} iterations (relative residual {relative_residual:.3e})"
            ),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
