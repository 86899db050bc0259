use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ExtComplex, GeometryError, MobiusMap};

/// Points closer than this to the unit circle are not accepted as interior points.
pub const BOUNDARY_MARGIN: f64 = 1e-9;

/// A point of H² in the Poincaré disk model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointH2 {
    z: Complex64,
}

impl PointH2 {
    pub fn new(z: Complex64) -> Result<Self, GeometryError> {
        if !(z.norm() < 1.0 - BOUNDARY_MARGIN) {
            return Err(GeometryError::OutsideDisk(z.norm()));
        }
        Ok(PointH2 { z })
    }

    pub fn origin() -> Self {
        PointH2 { z: Complex64::new(0.0, 0.0) }
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    /// The same point on the hemisphere over the unit circle in the upper half-space.
    pub fn to_hemisphere(&self) -> PointH3 {
        let s = 1.0 + self.z.norm_sqr();
        PointH3 { x: 2.0 * self.z.re / s, y: 2.0 * self.z.im / s, t: (1.0 - self.z.norm_sqr()) / s }
    }

    /// Inverse of [`PointH2::to_hemisphere`] (vertical projection composed with
    /// stereographic projection from the south pole).
    pub fn from_hemisphere(p: &PointH3) -> Result<Self, GeometryError> {
        PointH2::new(Complex64::new(p.x, p.y) / (1.0 + p.t))
    }

    /// Image under a disk-preserving Möbius map.
    pub fn moved_by(&self, m: &MobiusMap) -> Result<Self, GeometryError> {
        match m.apply_finite(self.z) {
            ExtComplex::Finite(w) => PointH2::new(w),
            ExtComplex::Infinity => Err(GeometryError::OutsideDisk(f64::INFINITY)),
        }
    }
}

/// A point of `S¹ = ∂H²`, as an angle in `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct BoundaryPointH2 {
    angle: f64,
}

impl BoundaryPointH2 {
    pub fn new(angle: f64) -> Self {
        let mut a = angle.rem_euclid(TAU);
        if a >= TAU {
            a = 0.0;
        }
        BoundaryPointH2 { angle: a }
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z.arg())
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.angle)
    }

    /// Angular distance on the circle, in `[0, π]`.
    pub fn separation(&self, other: &BoundaryPointH2) -> f64 {
        let d = (self.angle - other.angle).abs();
        d.min(TAU - d)
    }
}

/// A point of H³ in the upper half-space model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointH3 {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

impl PointH3 {
    pub fn new(x: f64, y: f64, t: f64) -> Result<Self, GeometryError> {
        if !(t > 0.0) || !x.is_finite() || !y.is_finite() || !t.is_finite() {
            return Err(GeometryError::NonpositiveHeight(t));
        }
        Ok(PointH3 { x, y, t })
    }

    pub fn base(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// Position in the Poincaré ball. The identification is the inversion in the sphere of
    /// radius √2 about `(0,0,−1)`, matching [`ExtComplex::to_sphere`] on the boundary.
    pub fn to_ball(&self) -> [f64; 3] {
        invert([self.x, self.y, self.t])
    }

    pub fn from_ball(u: [f64; 3]) -> Result<Self, GeometryError> {
        let n2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
        if !(n2 < 1.0) {
            return Err(GeometryError::OutsideDisk(n2.sqrt()));
        }
        let p = invert(u);
        PointH3::new(p[0], p[1], p[2])
    }
}

fn invert(u: [f64; 3]) -> [f64; 3] {
    let d = [u[0], u[1], u[2] + 1.0];
    let n2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
    [2.0 * d[0] / n2, 2.0 * d[1] / n2, 2.0 * d[2] / n2 - 1.0]
}

/// Hyperbolic distance in the disk model (curvature −1).
pub fn dist_h2(p: &PointH2, q: &PointH2) -> f64 {
    let num = (p.z - q.z).norm();
    let den = (Complex64::new(1.0, 0.0) - p.z.conj() * q.z).norm();
    2.0 * (num / den).atanh()
}

/// Hyperbolic distance in the upper half-space model.
pub fn dist_h3(p: &PointH3, q: &PointH3) -> f64 {
    let e2 = (p.x - q.x).powi(2) + (p.y - q.y).powi(2) + (p.t - q.t).powi(2);
    2.0 * (e2.sqrt() / (2.0 * (p.t * q.t).sqrt())).asinh()
}

/// Busemann function at the ideal point `xi`, normalized to vanish at `basepoint`.
/// Its sublevel sets are the horoballs at `xi`; it decreases towards `xi`.
pub fn busemann(xi: ExtComplex, p: &PointH3, basepoint: &PointH3) -> f64 {
    horo_height(xi, basepoint).ln() - horo_height(xi, p).ln()
}

/// Height of `p` after an isometry sending `xi` to `∞` (up to a constant factor).
fn horo_height(xi: ExtComplex, p: &PointH3) -> f64 {
    match xi {
        ExtComplex::Infinity => p.t,
        ExtComplex::Finite(w) => p.t / ((p.base() - w).norm_sqr() + p.t * p.t),
    }
}
