use num_complex::Complex64;
use thiserror::Error;

use crate::geodesic::GeodesicState;

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum GeometryError {
    #[error("base coordinate {xi} lies outside the domain of the {space} chart")]
    Domain { space: &'static str, xi: Complex64 },

    #[error("line lies outside the coordinate chart (direction antipodal to the chart centre)")]
    OutsideChart,

    #[error("direction is not normalized: norm {norm}, expected {expected}")]
    NotNormalized { norm: f64, expected: f64 },

    #[error("direction is past-pointing")]
    PastPointing,

    #[error("rigid motion violates its normalization: |alpha|^2 {op} |beta|^2 = {value}")]
    BadMotion { op: char, value: f64 },

    #[error("finite-difference step must be positive, got {0}")]
    InvalidStep(f64),

    #[error("operation requires the {expected} space")]
    SpaceMismatch { expected: &'static str },

    #[error("closed-form geodesic needs a nonzero base speed C2")]
    ZeroBaseSpeed,

    #[error("geodesic left the domain at s = {s}")]
    DomainExit {
        s: f64,
        last: Box<GeodesicState>,
        trajectory: Vec<GeodesicState>,
    },

    #[error("degenerate null frame (|d+eta|^2 - |d-eta|^2 = {0})")]
    DegenerateFrame(f64),

    #[error("umbilic point at {0}: sigma0 vanishes")]
    Umbilic(Complex64),

    #[error("section is not Lagrangian at {xi} (residual {residual})")]
    NonLagrangian { xi: Complex64, residual: f64 },

    #[error("divergence rho = {0} is not real")]
    NonRealRho(Complex64),

    #[error("sigma0 vanishes on the contour near {0}")]
    ContourHitsZero(Complex64),

    #[error("finite-difference jets failed the Richardson gate (discrepancy {0})")]
    FdInconsistent(f64),

    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    #[error("{0}")]
    Invalid(String),
}

impl GeometryError {
    pub(crate) fn domain(space: crate::kahler::SpaceKind, xi: Complex64) -> Self {
        GeometryError::Domain {
            space: space.name(),
            xi,
        }
    }
}
