use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FunkError {
    #[error("point ({0}, {1}) is not strictly inside the domain")]
    NotInterior(f64, f64),
    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },
    #[error("boundary is not strictly convex: curvature {kappa:.3e} at angle {phi:.6}")]
    NonConvex { phi: f64, kappa: f64 },
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("chord is nearly tangent to the boundary (alpha = {alpha})")]
    DegenerateChord { alpha: f64 },
    #[error("ray is nearly tangent to the boundary at the hit point (|y2| = {denom:.3e})")]
    NearTangency { denom: f64 },
    #[error("point lies outside the unit disk")]
    OutsideDisk,
    #[error("zero direction vector")]
    ZeroDirection,
    #[error("backward radius {radius} exceeds the maximal radius {bound}")]
    RadiusTooLarge { radius: f64, bound: f64 },
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("no sign change of the normal equation on the angular grid")]
    NormalSolveFailed,
    #[error("series has a vanishing leading term")]
    ZeroLeadingTerm,
    #[error("series square root needs an even valuation and a positive leading coefficient")]
    NoSquareRoot,
    #[error("cannot follow the series branch: {0}")]
    SingularBranch(&'static str),
    #[error("no real branch: leading coefficient {0} is not positive")]
    NoRealBranch(f64),
    #[error(transparent)]
    Spec(#[from] SpecError),
}

/// Problems with a domain description file.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("{}{field}: {message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct SpecError {
    pub line: Option<usize>,
    pub field: String,
    pub message: String,
}

impl SpecError {
    pub fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            line: None,
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = FunkError> = std::result::Result<T, E>;
