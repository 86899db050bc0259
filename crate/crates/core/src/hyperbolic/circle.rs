//! Oriented circles of the Riemann sphere, stored as Hermitian forms, and the
//! hyperbolic planes of H³ they bound.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ExtComplex, GeometryError, MobiusMap, PointH3};

/// The oriented circle `{ a|z|² + 2 Re(b̄ z) + c = 0 }`; its interior is where the form is negative.
///
/// Lines are the case `a = 0` and pass through `∞`. A circle is non-degenerate when
/// `|b|² − ac > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub a: f64,
    pub b: Complex64,
    pub c: f64,
}

/// Euclidean description of a circle on the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CircleShape {
    Round { center: Complex64, radius: f64 },
    Line { point: Complex64, direction: Complex64 },
}

impl Circle {
    pub fn new(a: f64, b: Complex64, c: f64) -> Result<Self, GeometryError> {
        let circle = Circle { a, b, c };
        if !(circle.discriminant() > 0.0) {
            return Err(GeometryError::DegenerateCircle);
        }
        Ok(circle)
    }

    /// Round circle with the disk as interior.
    pub fn round(center: Complex64, radius: f64) -> Result<Self, GeometryError> {
        if !(radius > 0.0) {
            return Err(GeometryError::DegenerateCircle);
        }
        Self::new(1.0, -center, center.norm_sqr() - radius * radius)
    }

    /// Line through `point` with the given direction; the interior lies to its left.
    pub fn line(point: Complex64, direction: Complex64) -> Result<Self, GeometryError> {
        if direction.norm() == 0.0 {
            return Err(GeometryError::DegenerateCircle);
        }
        let d = direction / direction.norm();
        Self::new(0.0, -Complex64::i() * d / 2.0, (d.conj() * point).im)
    }

    pub fn unit() -> Self {
        Circle { a: 1.0, b: Complex64::new(0.0, 0.0), c: -1.0 }
    }

    /// The circle through three distinct points, with interior on the left of `z1 → z2 → z3`.
    pub fn through(z1: ExtComplex, z2: ExtComplex, z3: ExtComplex) -> Result<Self, GeometryError> {
        // Image of the upper half-plane (interior left of the real axis traversed 0 → 1 → ∞).
        let m = MobiusMap::to_zero_one_infinity(z1, z2, z3)?;
        let real_axis = Circle::line(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))?;
        Ok(real_axis.transform(&m.inverse()))
    }

    /// `|b|² − ac`, the squared Lorentzian norm of the form.
    pub fn discriminant(&self) -> f64 {
        self.b.norm_sqr() - self.a * self.c
    }

    pub fn value(&self, z: Complex64) -> f64 {
        self.a * z.norm_sqr() + 2.0 * (self.b.conj() * z).re + self.c
    }

    /// Signed value normalized to be Möbius-covariant in sign and bounded on the sphere.
    pub fn side(&self, z: ExtComplex) -> f64 {
        let s = self.discriminant().sqrt();
        match z {
            ExtComplex::Infinity => self.a / s,
            ExtComplex::Finite(z) => self.value(z) / ((1.0 + z.norm_sqr()) * s),
        }
    }

    pub fn is_line(&self) -> bool {
        self.a.abs() <= 1e-14 * self.b.norm()
    }

    pub fn shape(&self) -> CircleShape {
        if self.is_line() {
            // 2 Re(b̄ z) + c = 0: normal b, distance -c/(2|b|).
            let n = self.b / self.b.norm();
            let point = n * (-self.c / (2.0 * self.b.norm()));
            CircleShape::Line { point, direction: n * Complex64::i() }
        } else {
            let center = -self.b / self.a;
            let radius = self.discriminant().sqrt() / self.a.abs();
            CircleShape::Round { center, radius }
        }
    }

    /// Image under a Möbius map: `H' = (M⁻¹)* H M⁻¹`. Orientation is preserved.
    pub fn transform(&self, m: &MobiusMap) -> Circle {
        let inv = m.inverse();
        // H = [[a, b], [b̄, c]], N = M⁻¹ = [[p, q], [r, s]].
        let (p, q, r, s) = (inv.a, inv.b, inv.c, inv.d);
        let ha = Complex64::new(self.a, 0.0);
        let hc = Complex64::new(self.c, 0.0);
        let hb = self.b;
        let hbb = self.b.conj();
        // H N
        let n11 = ha * p + hb * r;
        let n12 = ha * q + hb * s;
        let n21 = hbb * p + hc * r;
        let n22 = hbb * q + hc * s;
        // N* (H N)
        let a = p.conj() * n11 + r.conj() * n21;
        let b = p.conj() * n12 + r.conj() * n22;
        let c = q.conj() * n12 + s.conj() * n22;
        Circle { a: a.re, b, c: c.re }.normalized()
    }

    /// Rescales so that the discriminant is 1.
    pub fn normalized(&self) -> Circle {
        let s = self.discriminant().sqrt();
        Circle { a: self.a / s, b: self.b / s, c: self.c / s }
    }

    pub fn reversed(&self) -> Circle {
        Circle { a: -self.a, b: -self.b, c: -self.c }
    }

    /// Lorentzian pairing of two forms; equals the cosine of the angle between the
    /// oriented circles after normalization.
    pub fn pairing(&self, other: &Circle) -> f64 {
        (self.b * other.b.conj()).re - (self.a * other.c + self.c * other.a) / 2.0
    }

    /// Cosine of the angle between the oriented normals; for intersecting circles this is
    /// the cosine of the angle between them, and for the planes they bound in H³ the
    /// cosine of the angle between the planes' normals.
    pub fn angle_cos(&self, other: &Circle) -> f64 {
        self.pairing(other) / (self.discriminant() * other.discriminant()).sqrt()
    }

    /// Klein-model plane `{u : n·u = h}` of the ball with this boundary circle, where
    /// `n` is a unit vector and the interior of the circle is the side `n·u < h`.
    pub fn to_klein_plane(&self) -> ([f64; 3], f64) {
        let n = [self.b.re, self.b.im, (self.c - self.a) / 2.0];
        let h = -(self.a + self.c) / 2.0;
        let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        ([n[0] / len, n[1] / len, n[2] / len], h / len)
    }

    /// Inverse of [`Circle::to_klein_plane`]. Requires `|h| < |n|`.
    pub fn from_klein_plane(n: [f64; 3], h: f64) -> Result<Circle, GeometryError> {
        Circle::new(-(n[2] + h), Complex64::new(n[0], n[1]), n[2] - h).map(|c| c.normalized())
    }

    /// Intersection points of two circles, if they meet transversely.
    pub fn intersections(&self, other: &Circle) -> Option<(ExtComplex, ExtComplex)> {
        let (n1, h1) = self.to_klein_plane();
        let (n2, h2) = other.to_klein_plane();
        // Line of intersection of the two planes, then its intersection with the unit sphere.
        let dir = cross(n1, n2);
        let dd = dot(dir, dir);
        if dd < 1e-24 {
            return None;
        }
        let g = dot(n1, n2);
        let det = 1.0 - g * g;
        let alpha = (h1 - h2 * g) / det;
        let beta = (h2 - h1 * g) / det;
        let p0 = [
            alpha * n1[0] + beta * n2[0],
            alpha * n1[1] + beta * n2[1],
            alpha * n1[2] + beta * n2[2],
        ];
        let pp = dot(p0, p0);
        if pp >= 1.0 {
            return None;
        }
        let s = ((1.0 - pp) / dd).sqrt();
        let u1 = [p0[0] + s * dir[0], p0[1] + s * dir[1], p0[2] + s * dir[2]];
        let u2 = [p0[0] - s * dir[0], p0[1] - s * dir[1], p0[2] - s * dir[2]];
        Some((ExtComplex::from_sphere(u1), ExtComplex::from_sphere(u2)))
    }
}

pub(crate) fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// A totally geodesic plane of H³, given by its oriented boundary circle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneH3 {
    pub boundary: Circle,
}

impl PlaneH3 {
    pub fn new(boundary: Circle) -> Self {
        PlaneH3 { boundary: boundary.normalized() }
    }

    /// The hemisphere over the unit circle; the standard copy of H².
    pub fn unit_hemisphere() -> Self {
        PlaneH3::new(Circle::unit())
    }

    /// `sinh` of the signed hyperbolic distance from `p` to the plane; negative on the
    /// side lying over the interior of the boundary circle.
    pub fn signed_sinh_distance(&self, p: &PointH3) -> f64 {
        let c = &self.boundary;
        let z = Complex64::new(p.x, p.y);
        (c.a * (z.norm_sqr() + p.t * p.t) + 2.0 * (c.b.conj() * z).re + c.c)
            / (2.0 * p.t * c.discriminant().sqrt())
    }

    pub fn distance(&self, p: &PointH3) -> f64 {
        self.signed_sinh_distance(p).abs().asinh()
    }

    pub fn transform(&self, m: &MobiusMap) -> PlaneH3 {
        PlaneH3::new(self.boundary.transform(m))
    }

    /// Angle between oriented normals in `[0, π]`.
    pub fn normal_angle(&self, other: &PlaneH3) -> f64 {
        self.boundary.angle_cos(&other.boundary).clamp(-1.0, 1.0).acos()
    }

    /// The point of the plane closest to the ideal point `xi`, i.e. where the smallest
    /// horoball at `xi` meets the plane. `None` when `xi` lies on the boundary circle.
    pub fn horoball_contact(&self, xi: ExtComplex) -> Option<PointH3> {
        if self.boundary.side(xi).abs() < 1e-14 {
            return None;
        }
        // Send xi to ∞; the plane becomes a hemisphere whose summit is the contact point.
        let m = match xi {
            ExtComplex::Infinity => MobiusMap::identity(),
            ExtComplex::Finite(x) => MobiusMap::new(
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
                -x,
            )
            .ok()?,
        };
        let image = self.boundary.transform(&m);
        match image.shape() {
            CircleShape::Round { center, radius } => {
                let top = PointH3 { x: center.re, y: center.im, t: radius };
                Some(m.inverse().extend(&top))
            }
            CircleShape::Line { .. } => None,
        }
    }
}
