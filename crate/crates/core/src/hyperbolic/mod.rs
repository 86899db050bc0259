//! Möbius maps, circles and planes, points of H² and H³, geodesics.
//!
//! H² is the Poincaré disk, H³ the upper half-space `{(z, t) : t > 0}` with boundary the
//! Riemann sphere. `PSL(2, ℂ)` acts on both through [`MobiusMap`].

mod circle;
mod geodesic;
mod mobius;
mod points;
mod sphere;

pub use circle::{Circle, CircleShape, PlaneH3};
pub(crate) use circle::{cross, dot};
pub use geodesic::{
    geodesic_distance, in_open_arc, interleaved, CommonPerpendicular, Configuration, GeodesicH2,
    ENDPOINT_TOLERANCE,
};
pub use mobius::MobiusMap;
pub use points::{busemann, dist_h2, dist_h3, BoundaryPointH2, PointH2, PointH3, BOUNDARY_MARGIN};
pub use sphere::ExtComplex;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum GeometryError {
    #[error("singular Möbius matrix (|det| = {0:e})")]
    SingularMap(f64),
    #[error("point is not inside the unit disk (|z| = {0})")]
    OutsideDisk(f64),
    #[error("point of H³ must have positive finite height (got {0})")]
    NonpositiveHeight(f64),
    #[error("geodesic endpoints coincide")]
    DegenerateGeodesic,
    #[error("leaves cross")]
    CrossingLeaves,
    #[error("degenerate circle")]
    DegenerateCircle,
    #[error("points must be distinct")]
    CoincidentPoints,
}
