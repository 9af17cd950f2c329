//! Neutral Kähler geometry of the spaces of oriented lines in Euclidean
//! 3-space and of future-pointing time-like lines in Lorentzian 3-space.
//!
//! Both spaces are modelled as the tangent bundle TN of a constant-curvature
//! surface (the round sphere or the hyperbolic disc) in the holomorphic
//! coordinates (ξ, η). The crate evaluates the metric, complex structure and
//! symplectic form, the isometries and geodesics, and the geometry of line
//! congruences and of minimal (maximal) surfaces.

pub mod cli;
pub mod congruence;
pub mod error;
pub mod geodesic;
pub mod grid;
pub mod io;
pub mod isometry;
pub mod jet;
pub mod kahler;
pub mod line_map;
pub mod minimal;
pub mod oracle;
pub mod verify;

pub use congruence::{CongruenceJet, ParametricCongruence, SpinData};
pub use error::{GeometryError, Result};
pub use geodesic::{GeodesicParams, GeodesicState};
pub use grid::XiGrid;
pub use isometry::{KillingField, RigidMotion};
pub use jet::{FdSection, JetProvenance, Poly2, Section, WirtingerJet3};
pub use kahler::{ConformalData, LinePoint, SpaceKind, TangentVector};
pub use line_map::{LineWithParam, SpacePoint};
pub use minimal::{HolomorphicPoly, SeriesSection};
pub use verify::{VerifyConfig, VerifyReport};
