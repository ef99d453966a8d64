use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("scalar {0} has no single dominant term under the grading")]
    NotPerturbativelyInvertible(String),
    #[error("leading term of {0} is not a perfect square")]
    NotPerfectSquareLeading(String),
    #[error("symbol `{0}` has no numeric value")]
    UnboundSymbol(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("unsupported dimension {0} (expected 2 or 3)")]
    UnsupportedDimension(usize),
    #[error("field conditions violated: {0}")]
    ConditionsViolated(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("unsupported realization: {0}")]
    UnsupportedRealization(String),
    #[error("canonical Landau form could not be matched: {0}")]
    CanonicalMatchFailed(String),
    #[error("expression is not in the span of b, b† and 1: {0}")]
    NotInLadderSpan(String),
    #[error("expression is not linear in the electric field: {0}")]
    NotLinearInField(String),
    #[error("effective Hamiltonian is not quadratic in momenta: {0}")]
    NonQuadratic(String),
    #[error("momentum-squared coefficient depends on coordinates: {0}")]
    CoordinateDependentMass(String),
    #[error("gauge field is not linear in the coordinates: {0}")]
    NonLinearField(String),
    #[error("contour crosses the solenoid boundary (distance range {min:.6}..{max:.6}, radius {radius})")]
    ContourIntersectsBoundary { min: f64, max: f64, radius: f64 },
    #[error("invalid contour: {0}")]
    InvalidContour(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown symbol `{name}` at line {line}, column {column}")]
    UnknownSymbol {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("coordinate used non-polynomially at line {line}, column {column}")]
    NonPolynomialCoordinateUse { line: usize, column: usize },
    #[error("configuration error: {0}")]
    Config(String),
}
