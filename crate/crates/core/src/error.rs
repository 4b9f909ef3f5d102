use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vector has zero or non-finite length")]
    DegenerateVector,
    #[error("radius must be positive and finite, got {0}")]
    NonPositiveRadius(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unsupported integrand dimension {0} (only 1 and 2)")]
    UnsupportedDimension(usize),
    #[error("point is not in the open northern hemisphere (N·P = {0})")]
    NotNorthern(f64),
    #[error("point is within tolerance of a pole (N·P = {0})")]
    NearPole(f64),
    #[error("points are antipodal within tolerance")]
    AntipodalPair,
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("integrand is not positive: minimum {min:.3e} on the validation grid")]
    NotPositive { min: f64 },
    #[error("not a convex integrand: margin {margin:.3e} at {witness}")]
    NotConvex { witness: Witness, margin: f64 },
    #[error("not a strictly convex integrand: curvature {curvature:.3e} at {witness}")]
    NotStrictlyConvex { witness: Witness, curvature: f64 },
    #[error("point set is not hemispherical")]
    NotHemispherical,
    #[error("wave-front parameter |t| must be below π, got {0}")]
    WaveParameter(f64),
    #[error("tangent data degenerate at sample {0}")]
    DegenerateTangent(usize),
    #[error("operation needs n = {needed}, got n = {got}")]
    WrongDimension { needed: usize, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Location where a pointwise test was tightest, printed as an angle for
/// n = 1 and as a unit vector otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness(pub Vec<f64>);

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 2 {
            let a = self.0[1].atan2(self.0[0]).rem_euclid(std::f64::consts::TAU);
            write!(f, "angle {a:.6}")
        } else {
            write!(f, "(")?;
            for (i, c) in self.0.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{c:.6}")?;
            }
            write!(f, ")")
        }
    }
}

/// Definition-file problems, tagged with the 1-based line they occur on.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseErrorKind {
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("value `{0}` is not a finite number")]
    NonFinite(String),
    #[error("expected `key = value`")]
    Malformed,
    #[error("key `{0}` given twice")]
    Duplicate(String),
    #[error("missing `{0}`")]
    Missing(&'static str),
    #[error("kind `{kind}` is not valid for dim = {dim}")]
    DimKindMismatch { dim: usize, kind: String },
    #[error("invalid dim `{0}`")]
    BadDim(String),
    #[error("invalid kind `{0}`")]
    BadKind(String),
    #[error("integrand is not positive: minimum {min:.3e} on the validation grid")]
    Positivity { min: f64 },
    #[error("sample file: {0}")]
    Samples(String),
}
