use thiserror::Error;

/// Errors produced by the geometry, enumeration, and statistics routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GasketError {
    #[error("invalid gasket angles ({theta1}, {theta2}): {reason}")]
    InvalidSpec {
        theta1: f64,
        theta2: f64,
        reason: String,
    },

    #[error(
        "degenerate gasket angles ({theta1}, {theta2}): tangency points closer than {min_gap} rad"
    )]
    DegenerateSpec {
        theta1: f64,
        theta2: f64,
        min_gap: f64,
    },

    #[error("quadruple index {0} out of range (expected 0..=3)")]
    IndexOutOfRange(usize),

    #[error("curvature bound must be finite and positive, got {0}")]
    InvalidBound(f64),

    #[error("geometry check failed: {0}")]
    GeometryViolation(String),

    #[error("cell size must be finite and positive, got {0}")]
    InvalidCellSize(f64),

    #[error("need at least 2 points, got {0}")]
    TooFewPoints(usize),

    #[error("points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),

    #[error("invalid distance grid: {0}")]
    InvalidGrid(String),

    #[error("invalid region: {0}")]
    InvalidRegion(String),

    #[error("statistic violates its bounds: {0}")]
    SeriesViolation(String),
}

pub type Result<T> = std::result::Result<T, GasketError>;
