use num_complex::Complex64;

use crate::hyperbolic::{dist_h2, GeometryError, MobiusMap, PointH2};

/// An open geodesic segment of the disk, given by its endpoints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeodesicArc {
    p: PointH2,
    q: PointH2,
}

impl GeodesicArc {
    pub fn new(p: PointH2, q: PointH2) -> Result<Self, GeometryError> {
        if (p.z() - q.z()).norm() < 1e-15 {
            return Err(GeometryError::CoincidentPoints);
        }
        Ok(GeodesicArc { p, q })
    }

    /// The segment of hyperbolic length `length` leaving `p` in Euclidean direction `angle`.
    pub fn from_point_direction(p: PointH2, angle: f64, length: f64) -> Result<Self, GeometryError> {
        let to_origin = MobiusMap::disk_automorphism(0.0, p.z())?;
        let w = Complex64::from_polar((length / 2.0).tanh(), angle);
        let q = PointH2::new(to_origin.inverse().apply_finite(w).finite().ok_or(GeometryError::OutsideDisk(f64::INFINITY))?)?;
        Self::new(p, q)
    }

    pub fn endpoints(&self) -> (PointH2, PointH2) {
        (self.p, self.q)
    }

    pub fn length(&self) -> f64 {
        dist_h2(&self.p, &self.q)
    }

    /// Point at fraction `s ∈ [0, 1]` of the arclength from the first endpoint.
    pub fn point_at(&self, s: f64) -> PointH2 {
        let to_origin = MobiusMap::disk_automorphism(0.0, self.p.z()).expect("interior point");
        let w = to_origin.apply_finite(self.q.z()).finite().expect("interior point");
        let r = (s * self.length() / 2.0).tanh();
        let z = to_origin.inverse().apply_finite(w / w.norm() * r).finite().expect("interior point");
        PointH2::new(z).unwrap_or(self.q)
    }
}
