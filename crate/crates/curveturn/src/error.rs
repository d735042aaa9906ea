//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by the geometry kernel, curve model and analyses.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    // Geometry kernel.
    #[error("zero-length vector where a direction is required")]
    ZeroVector,
    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(&'static str),
    #[error("non-finite coordinate")]
    NonFinite,

    // Curve model.
    #[error("invalid curve spec: {0}")]
    InvalidSpec(String),
    #[error("generated or supplied closed polygon is not simple")]
    NotSimple,
    #[error("duplicate consecutive vertex at index {0}")]
    DuplicateVertex(usize),
    #[error("too few vertices: got {got}, need at least {need}")]
    TooFewVertices { got: usize, need: usize },
    #[error("arc-length parameter {0} out of range for an open curve")]
    OutOfRange(f64),
    #[error("degenerate arc range (length below tolerance)")]
    DegenerateRange,
    #[error("invalid resample count {0}")]
    InvalidN(usize),
    #[error("operation requires a closed curve")]
    OpenCurve,

    // Turn calculus.
    #[error("point at s={0} does not lie on the curve")]
    PointNotOnCurve(f64),

    // LTB analysis.
    #[error("no arc between the points has turn <= pi/2 + tol")]
    NoStraightArc,
    #[error("point pair distance {dist} is not below delta {delta}")]
    DeltaExceeded { dist: f64, delta: f64 },

    // Regularity.
    #[error("invalid osculating radius {0}")]
    InvalidRadius(f64),
    #[error("curve has angular points above the detection threshold")]
    CornerPresent,
    #[error("degenerate tangent at vertex {0}")]
    DegenerateTangent(usize),
    #[error("bisection bracket invalid: {0}")]
    BadBracket(String),

    // Verification harness.
    #[error("geometry precondition failed: {0}")]
    GeometryPreconditionFailed(String),
    #[error("Lipschitz hypothesis failed: {0}")]
    LipschitzHypothesisFailed(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("projection ray misses the arc")]
    NoIntersection,
    #[error("inner polyline together with the chord is not convex")]
    NotConvexInner,
    #[error("projected points do not form a chain of the arc")]
    ChainViolation,

    // I/O.
    #[error("curve csv: {0}")]
    CurveCsv(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
