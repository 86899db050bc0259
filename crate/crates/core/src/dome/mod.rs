//! Domes of finitely punctured spheres.
//!
//! For `Ω = Ĉ − {p₁, …, p_n}` the convex hull of the `p_i` in H³ is, in the Klein model, the
//! Euclidean convex hull of the points `p_i` on the unit sphere, so the dome is an ideal
//! polyhedron. Its faces are flat ideal polygons and its bending lamination is the set of edges,
//! weighted by exterior dihedral angle. When all points lie on one circle the hull is a flat
//! polygon and the dome is its double, folded by `π` along every side.

mod develop;
mod export;
mod hull;
mod retract;

use num_complex::Complex64;
use thiserror::Error;

use crate::hyperbolic::{ExtComplex, GeometryError, MobiusMap};

pub use develop::{arc_bending, dome_injectivity_radius, ArcBending, DomePoint, InjectivityEstimate, NODE_LIMIT};
pub use hull::{bending_lamination, build_hull, BendingLine, HullEdge, HullFace, HullPolyhedron, COPLANAR_TOLERANCE};
pub use retract::{retract, Carrier, RetractionResult};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DomeError {
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("points {0} and {1} coincide numerically")]
    NumericallyCoincident(usize, usize),
    #[error("point is in the complement of the domain")]
    PointNotInDomain,
    #[error("no essential loop closed within depth {0}")]
    DepthTooSmall(usize),
    #[error("point does not lie on face {0}")]
    NotOnFace(usize),
    #[error("invalid configuration json: {0}")]
    Json(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Minimal chordal separation between configuration points.
pub const MIN_SEPARATION: f64 = 1e-9;

/// The complement `Ĉ − Ω` of a finitely punctured sphere.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealConfiguration {
    points: Vec<ExtComplex>,
    concyclic: bool,
}

impl IdealConfiguration {
    pub fn new(points: Vec<ExtComplex>) -> Result<Self, DomeError> {
        if points.len() < 3 {
            return Err(DomeError::TooFewPoints(points.len()));
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i].chordal_distance(&points[j]) <= MIN_SEPARATION {
                    return Err(DomeError::NumericallyCoincident(i, j));
                }
            }
        }
        let concyclic = hull::coplanar(&points.iter().map(|p| p.to_sphere()).collect::<Vec<_>>());
        Ok(IdealConfiguration { points, concyclic })
    }

    pub fn from_complex(points: &[Complex64]) -> Result<Self, DomeError> {
        Self::new(points.iter().map(|&z| ExtComplex::Finite(z)).collect())
    }

    pub fn points(&self) -> &[ExtComplex] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Whether every point lies on one round circle.
    pub fn is_concyclic(&self) -> bool {
        self.concyclic
    }

    pub fn transform(&self, m: &MobiusMap) -> Result<Self, DomeError> {
        Self::new(self.points.iter().map(|&p| m.apply(p)).collect())
    }

    /// `{"points": [[re, im] | "inf", ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "points": self.points.iter().map(export::point_json).collect::<Vec<_>>() })
    }

    pub fn from_json(s: &str) -> Result<Self, DomeError> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| DomeError::Json(e.to_string()))?;
        let arr = v
            .get("points")
            .and_then(|p| p.as_array())
            .ok_or_else(|| DomeError::Json("missing \"points\" array".into()))?;
        let points = arr.iter().map(export::parse_point).collect::<Result<Vec<_>, _>>()?;
        Self::new(points)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Vertices of a regular tetrahedron inscribed in the sphere.
    pub fn regular_tetrahedron() -> IdealConfiguration {
        let s = 1.0 / 3f64.sqrt();
        let v = [[s, s, s], [s, -s, -s], [-s, s, -s], [-s, -s, s]];
        IdealConfiguration::new(v.iter().map(|&u| ExtComplex::from_sphere(u)).collect()).unwrap()
    }

    /// `n` points on the unit circle, rotated by `phase`.
    pub fn circle(n: usize, phase: f64) -> IdealConfiguration {
        IdealConfiguration::from_complex(
            &(0..n).map(|k| Complex64::from_polar(1.0, phase + std::f64::consts::TAU * k as f64 / n as f64)).collect::<Vec<_>>(),
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn configuration_checks() {
        let z = |re: f64, im: f64| ExtComplex::new(re, im);
        assert!(matches!(IdealConfiguration::new(vec![z(0.0, 0.0), z(1.0, 0.0)]), Err(DomeError::TooFewPoints(2))));
        assert!(matches!(
            IdealConfiguration::new(vec![z(0.0, 0.0), z(1.0, 0.0), z(1.0, 1e-12)]),
            Err(DomeError::NumericallyCoincident(1, 2))
        ));
        let c = IdealConfiguration::new(vec![z(0.0, 0.0), z(1.0, 0.0), ExtComplex::Infinity, z(-1.0, 0.0)]).unwrap();
        assert!(c.is_concyclic());
        let c = IdealConfiguration::new(vec![z(0.0, 0.0), z(1.0, 0.0), ExtComplex::Infinity, z(0.0, 0.7)]).unwrap();
        assert!(!c.is_concyclic());
        let back = IdealConfiguration::from_json(&c.to_json().to_string()).unwrap();
        assert_eq!(back, c);
        assert!(IdealConfiguration::from_json(r#"{"points": [[0, 0], [1, 0], "nope"]}"#).is_err());
        assert!(IdealConfiguration::from_json(r#"{"pts": []}"#).is_err());
    }
}
