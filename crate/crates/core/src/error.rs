use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate basis label '{0}'")]
    DuplicateLabel(String),
    #[error("unknown basis label '{0}'")]
    UnknownLabel(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("vectors are linearly dependent: {0}")]
    Dependent(String),
    #[error("singular restriction: kernel vector {0}")]
    SingularRestriction(String),
    #[error("subspace not invariant: image of basis vector {0} leaves the span")]
    NotInvariant(usize),
    #[error("antisymmetry violated for ({0}, {1})")]
    Antisymmetry(String, String),
    #[error("Jacobi identity violated for ({0}, {1}, {2})")]
    Jacobi(String, String, String),
    #[error("invalid grading: {0}")]
    Grading(String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("representation invalid: {0}")]
    Representation(String),
    #[error("basis is not weight-adapted: {0}")]
    NotWeightAdapted(String),
    #[error("degree {k} out of range 0..={max}")]
    DegreeOutOfRange { k: usize, max: usize },
    #[error("element '{0}' is not in p")]
    NotInParabolic(String),
    #[error("coboundary needs g-module")]
    NeedsGModule,
    #[error("flat calculus restricted to |1|-graded")]
    NotAbelian,
    #[error("polynomial degree {got} exceeds cutoff {max}")]
    DegreeOverflow { got: usize, max: usize },
    #[error("invariant failure: {0}")]
    Invariant(String),
    #[error("pairing is not equivariant: {0}")]
    Equivariance(String),
    #[error("input rejected: {0}")]
    Rejected(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
