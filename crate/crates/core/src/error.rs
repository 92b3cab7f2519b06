use thiserror::Error;

/// Errors raised by body construction, pointwise counters and estimators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("degenerate body: {0}")]
    DegenerateBody(String),

    #[error("support function is not convex: radius of curvature {rho:.3e} at theta = {theta:.6}")]
    NonConvex { theta: f64, rho: f64 },

    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("query point is not strictly inside the body")]
    NotInterior,

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("infinitely many affine diameters: parallel edges {0} and {1}")]
    InfiniteDiameters(usize, usize),

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("flow singularity: {0}")]
    Singularity(String),

    #[error("body too singular: {resampled} of {samples} samples hit degenerate points")]
    TooSingular { resampled: usize, samples: usize },

    #[error("invalid body spec: {0}")]
    Spec(String),
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
