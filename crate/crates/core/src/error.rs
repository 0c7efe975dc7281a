use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("length mismatch: expected {0}, found {1}")]
    LengthMismatch(usize, usize),
    #[error("coordinate {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("coordinate {0} listed twice")]
    DuplicateIndex(usize),
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("invalid binary digit {0:?}")]
    BadDigit(char),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error("vector {0} is not a codeword")]
    NotInCode(String),
    #[error("oracle guard exceeded: dimension {0} > 6")]
    OracleGuard(usize),
    #[error("not a 2-basis of the code: {0}")]
    NotTwoBasis(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("coordinate {0} is nonzero in more than two basis vectors")]
    LoadExceeded(usize),
    #[error("basis vectors are linearly dependent")]
    Dependent,
    #[error("unknown vertex label {0:?}")]
    UnknownVertex(String),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("triangle {0} does not exist")]
    InvalidTriangle(usize),
    #[error("vertex {0} does not exist")]
    InvalidVertex(usize),
    #[error("tunnel cycles share vertex {0}")]
    SharedVertex(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("degenerate triangle")]
    Degenerate,
    #[error("expected dimension {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("invalid rational {0:?}")]
    BadRational(String),
}

/// Why a ray probe could not be evaluated. Inadmissible directions are
/// reported separately so callers can pick a new direction and retry.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RayError {
    #[error("base point lies on the complex")]
    PointOnComplex,
    #[error("direction is parallel to triangle {0}")]
    ParallelToTriangle(usize),
    #[error("direction is parallel to edge ({0}, {1})")]
    ParallelToEdge(usize, usize),
    #[error("ray passes through vertex {0}")]
    HitsVertex(usize),
    #[error("zero direction")]
    ZeroDirection,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

impl RayError {
    /// Whether a different direction might succeed.
    pub fn is_retryable(&self) -> bool {
        matches!(
            self,
            RayError::ParallelToTriangle(_)
                | RayError::ParallelToEdge(..)
                | RayError::HitsVertex(_)
                | RayError::ZeroDirection
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error("basis does not span the code")]
    BasisMismatch,
}

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{file} line {line}: {msg}")]
    Parse {
        file: String,
        line: usize,
        msg: String,
    },
    /// The bundle parses but refers to triangles or vertices that are absent.
    #[error("inconsistent bundle: {0}")]
    Inconsistent(String),
}
