use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{BoundaryPointH2, ExtComplex, GeometryError, MobiusMap, PointH2};

/// Tolerance for treating two boundary angles as the same point.
pub const ENDPOINT_TOLERANCE: f64 = 1e-12;

/// An unoriented geodesic of the disk, given by its two ideal endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Ends", into = "Ends")]
pub struct GeodesicH2 {
    endpoints: (BoundaryPointH2, BoundaryPointH2),
    /// The endpoints as unit complex numbers, kept to avoid trigonometry in hot loops.
    unit: (Complex64, Complex64),
}

#[derive(Serialize, Deserialize)]
struct Ends {
    endpoints: (BoundaryPointH2, BoundaryPointH2),
}

impl TryFrom<Ends> for GeodesicH2 {
    type Error = GeometryError;

    fn try_from(e: Ends) -> Result<Self, GeometryError> {
        GeodesicH2::new(e.endpoints.0, e.endpoints.1)
    }
}

impl From<GeodesicH2> for Ends {
    fn from(g: GeodesicH2) -> Self {
        Ends { endpoints: g.endpoints }
    }
}

/// Relative position of two geodesics of H².
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Configuration {
    Identical,
    /// They share exactly one ideal endpoint.
    Asymptotic,
    Disjoint,
    Crossing,
}

/// The common perpendicular of two non-crossing geodesics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CommonPerpendicular {
    pub distance: f64,
    /// Feet on the first and second geodesic; absent when the distance is realized only
    /// at infinity (asymptotic leaves) or everywhere (identical leaves).
    pub feet: Option<(PointH2, PointH2)>,
}

impl GeodesicH2 {
    pub fn new(a: BoundaryPointH2, b: BoundaryPointH2) -> Result<Self, GeometryError> {
        if a.separation(&b) < ENDPOINT_TOLERANCE {
            return Err(GeometryError::DegenerateGeodesic);
        }
        Ok(GeodesicH2 { endpoints: (a, b), unit: (a.to_complex(), b.to_complex()) })
    }

    pub fn from_angles(a: f64, b: f64) -> Result<Self, GeometryError> {
        Self::new(BoundaryPointH2::new(a), BoundaryPointH2::new(b))
    }

    pub fn endpoints(&self) -> (BoundaryPointH2, BoundaryPointH2) {
        self.endpoints
    }

    pub fn endpoint_complex(&self) -> (Complex64, Complex64) {
        self.unit
    }

    /// Hermitian form `A|z|² + 2Re(B̄z) + A` of the circle carrying the geodesic.
    fn form(&self) -> (f64, Complex64) {
        let (a, b) = self.endpoint_complex();
        ((b.conj() * a).im, Complex64::i() * (a - b))
    }

    /// Side of `z` relative to the geodesic: positive on the side containing the
    /// counterclockwise arc from the first to the second endpoint.
    pub fn side(&self, z: Complex64) -> f64 {
        let (a, b) = self.form();
        a * (z.norm_sqr() + 1.0) + 2.0 * (b.conj() * z).re
    }

    /// Distance from an interior point to the geodesic, signed like [`side`](Self::side).
    pub fn signed_distance(&self, p: &PointH2) -> f64 {
        self.sinh_signed_distance(p).asinh()
    }

    /// `sinh` of [`signed_distance`](Self::signed_distance), which needs no transcendental calls.
    pub fn sinh_signed_distance(&self, p: &PointH2) -> f64 {
        let (a, b) = self.form();
        let z = p.z();
        let value = a * (z.norm_sqr() + 1.0) + 2.0 * (b.conj() * z).re;
        value / ((1.0 - z.norm_sqr()) * (b.norm_sqr() - a * a).sqrt())
    }

    /// Hyperbolic distance from an interior point to the geodesic.
    pub fn distance_to(&self, p: &PointH2) -> f64 {
        let (a, b) = self.form();
        let z = p.z();
        let value = a * (z.norm_sqr() + 1.0) + 2.0 * (b.conj() * z).re;
        let norm = (b.norm_sqr() - a * a).sqrt();
        (value.abs() / ((1.0 - z.norm_sqr()) * norm)).asinh()
    }

    /// Point of the geodesic at signed arclength `s` from its point closest to the origin,
    /// moving towards the second endpoint.
    pub fn point_at(&self, s: f64) -> PointH2 {
        let (a, b) = self.endpoint_complex();
        // Translate along the diameter-conjugate: use the half-plane picture a ↦ 0, b ↦ ∞.
        let f = MobiusMap::disk_to_upper_half_plane_sending(a, b).expect("distinct endpoints");
        let g = f.inverse();
        // In the half-plane the geodesic is the positive imaginary axis; find the height of
        // the point closest to the origin of the disk.
        let o = f.apply_finite(Complex64::new(0.0, 0.0)).finite().expect("origin is interior");
        let h0 = o.norm();
        let w = Complex64::new(0.0, h0 * s.exp());
        PointH2::new(g.apply_finite(w).finite().expect("interior point")).unwrap_or_else(|_| {
            // Clamp far-out points just inside the admissible region.
            let z = g.apply_finite(w).finite().unwrap();
            PointH2::new(z * ((1.0 - 2.0 * super::points::BOUNDARY_MARGIN) / z.norm())).unwrap()
        })
    }

    pub fn configuration(&self, other: &GeodesicH2) -> Configuration {
        let (a1, b1) = self.endpoints;
        let (a2, b2) = other.endpoints;
        let same = |p: BoundaryPointH2, q: BoundaryPointH2| p.separation(&q) < ENDPOINT_TOLERANCE;
        let shared = [same(a1, a2), same(a1, b2), same(b1, a2), same(b1, b2)];
        let count = shared.iter().filter(|&&s| s).count();
        if count >= 2 {
            return Configuration::Identical;
        }
        if count == 1 {
            return Configuration::Asymptotic;
        }
        if interleaved(a1.angle(), b1.angle(), a2.angle(), b2.angle()) {
            Configuration::Crossing
        } else {
            Configuration::Disjoint
        }
    }
}

/// Whether exactly one of `c`, `d` lies strictly inside the counterclockwise arc `(a, b)`.
/// Callers rule out shared endpoints first.
pub fn interleaved(a: f64, b: f64, c: f64, d: f64) -> bool {
    in_open_arc(a, b, c) != in_open_arc(a, b, d)
}

/// Whether `x` lies strictly inside the counterclockwise arc from `a` to `b`.
pub fn in_open_arc(a: f64, b: f64, x: f64) -> bool {
    let tau = std::f64::consts::TAU;
    let span = (b - a).rem_euclid(tau);
    let off = (x - a).rem_euclid(tau);
    off > 0.0 && off < span
}

/// Length of the common perpendicular between two geodesics and its feet.
pub fn geodesic_distance(l1: &GeodesicH2, l2: &GeodesicH2) -> Result<CommonPerpendicular, GeometryError> {
    match l1.configuration(l2) {
        Configuration::Crossing => return Err(GeometryError::CrossingLeaves),
        Configuration::Identical | Configuration::Asymptotic => {
            return Ok(CommonPerpendicular { distance: 0.0, feet: None })
        }
        Configuration::Disjoint => {}
    }
    let (a1, a2) = l1.endpoint_complex();
    let (b1, b2) = l2.endpoint_complex();
    // Half-plane picture: l1 becomes the imaginary axis, l2 a semicircle over [x1, x2] on
    // one side of it.
    let f = MobiusMap::disk_to_upper_half_plane_sending(a1, a2)?;
    let real = |z: Complex64| f.apply_finite(z).finite().map(|w| w.re).unwrap_or(f64::INFINITY);
    let (mut x1, mut x2) = (real(b1), real(b2));
    let sign = x1.signum();
    x1 = x1.abs();
    x2 = x2.abs();
    if x1 > x2 {
        std::mem::swap(&mut x1, &mut x2);
    }
    let (s1, s2) = (x1.sqrt(), x2.sqrt());
    let distance = ((s2 + s1) / (s2 - s1)).ln();
    // The perpendicular is the circle |w| = R, R² = x1 x2.
    let r = s1 * s2;
    let foot_re = 2.0 * x1 * x2 / (x1 + x2);
    let foot_im = (r * r - foot_re * foot_re).max(0.0).sqrt();
    let g = f.inverse();
    let back = |w: Complex64| -> Result<PointH2, GeometryError> {
        match g.apply_finite(w) {
            ExtComplex::Finite(z) => PointH2::new(z),
            ExtComplex::Infinity => Err(GeometryError::OutsideDisk(f64::INFINITY)),
        }
    };
    let feet = match (back(Complex64::new(0.0, r)), back(Complex64::new(sign * foot_re, foot_im))) {
        (Ok(p), Ok(q)) => Some((p, q)),
        _ => None,
    };
    Ok(CommonPerpendicular { distance, feet })
}
