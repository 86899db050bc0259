use num_complex::Complex64;
use serde::Serialize;

use super::{DomeError, HullPolyhedron, MIN_SEPARATION};
use crate::hyperbolic::{busemann, dot, ExtComplex, MobiusMap, PointH3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Carrier {
    Face(usize),
    Edge(usize),
}

/// The nearest point retraction of a point of `Ω`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RetractionResult {
    pub point: PointH3,
    pub carrier: Carrier,
    /// Busemann function at `z`, normalized to vanish at `(0, 0, 1)`.
    pub busemann: f64,
}

/// Isometry sending `z` to `∞`.
fn to_infinity(z: ExtComplex) -> MobiusMap {
    match z {
        ExtComplex::Infinity => MobiusMap::identity(),
        ExtComplex::Finite(x) => {
            MobiusMap::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), -x)
                .expect("determinant 1")
        }
    }
}

/// Point of the geodesic `(a, b)` closest to the ideal point `z`.
fn summit(a: ExtComplex, b: ExtComplex, m: &MobiusMap) -> Option<PointH3> {
    let (a, b) = (m.apply(a).finite()?, m.apply(b).finite()?);
    let c = (a + b) / 2.0;
    let top = PointH3 { x: c.re, y: c.im, t: (a - b).norm() / 2.0 };
    Some(m.inverse().extend(&top))
}

/// Where the smallest horoball at `z` touching the dome meets it.
///
/// The minimum of the Busemann function over the hull lies in the interior of a face or on an
/// edge, since the hull has no finite vertices. Faces are tried first and win ties.
pub fn retract(h: &HullPolyhedron, z: ExtComplex) -> Result<RetractionResult, DomeError> {
    if h.config.points().iter().any(|p| p.chordal_distance(&z) <= MIN_SEPARATION) {
        return Err(DomeError::PointNotInDomain);
    }
    let base = PointH3 { x: 0.0, y: 0.0, t: 1.0 };
    let u = z.to_sphere();
    let mut best: Option<RetractionResult> = None;
    let mut consider = |point: PointH3, carrier: Carrier| {
        let b = busemann(z, &point, &base);
        if best.map_or(true, |r| b < r.busemann - 1e-12) {
            best = Some(RetractionResult { point, carrier, busemann: b });
        }
    };
    for (f, face) in h.faces.iter().enumerate() {
        // The horoball touches a face from the side facing z.
        if dot(face.normal, u) - face.offset <= 0.0 {
            continue;
        }
        if let Some(p) = face.plane.horoball_contact(z) {
            if h.in_face(f, HullPolyhedron::klein(&p), 1e-12) {
                consider(p, Carrier::Face(f));
            }
        }
    }
    let m = to_infinity(z);
    for (k, e) in h.edges.iter().enumerate() {
        let pts = h.config.points();
        if let Some(p) = summit(pts[e.ends.0], pts[e.ends.1], &m) {
            consider(p, Carrier::Edge(k));
        }
    }
    best.ok_or(DomeError::PointNotInDomain)
}
