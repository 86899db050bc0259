//! Möbius transformations of the Riemann sphere and their Poincaré extensions to H³.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ExtComplex, GeometryError, PointH3};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `z ↦ (az + b)/(cz + d)`, stored with `ad − bc = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MobiusMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Default for MobiusMap {
    fn default() -> Self {
        Self::identity()
    }
}

impl MobiusMap {
    /// Builds and normalizes a map; fails when the determinant vanishes.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self, GeometryError> {
        let det = a * d - b * c;
        let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
        if !(det.norm() > 1e-300) || det.norm() <= 1e-13 * scale * scale {
            return Err(GeometryError::SingularMap(det.norm()));
        }
        let k = det.sqrt().inv();
        Ok(Self { a: a * k, b: b * k, c: c * k, d: d * k })
    }

    pub fn identity() -> Self {
        Self { a: ONE, b: ZERO, c: ZERO, d: ONE }
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// Trace of the normalized matrix; defined up to sign.
    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    pub fn apply(&self, z: ExtComplex) -> ExtComplex {
        match z {
            ExtComplex::Infinity => {
                if self.c == ZERO {
                    ExtComplex::Infinity
                } else {
                    ExtComplex::Finite(self.a / self.c)
                }
            }
            ExtComplex::Finite(z) => self.apply_finite(z),
        }
    }

    pub fn apply_finite(&self, z: Complex64) -> ExtComplex {
        let den = self.c * z + self.d;
        if den == ZERO {
            ExtComplex::Infinity
        } else {
            ExtComplex::Finite((self.a * z + self.b) / den)
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        let m = MobiusMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        };
        m.renormalized()
    }

    pub fn inverse(&self) -> MobiusMap {
        MobiusMap { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Divides out the drift of the determinant accumulated by long compositions.
    fn renormalized(self) -> MobiusMap {
        let k = self.det().sqrt().inv();
        MobiusMap { a: self.a * k, b: self.b * k, c: self.c * k, d: self.d * k }
    }

    /// The map sending `z1 ↦ 0`, `z2 ↦ 1`, `z3 ↦ ∞`.
    pub fn to_zero_one_infinity(z1: ExtComplex, z2: ExtComplex, z3: ExtComplex) -> Result<Self, GeometryError> {
        use ExtComplex::*;
        match (z1, z2, z3) {
            (Infinity, Finite(z2), Finite(z3)) => Self::new(ZERO, z2 - z3, ONE, -z3),
            (Finite(z1), Infinity, Finite(z3)) => Self::new(ONE, -z1, ONE, -z3),
            (Finite(z1), Finite(z2), Infinity) => Self::new(ONE, -z1, ZERO, z2 - z1),
            (Finite(z1), Finite(z2), Finite(z3)) => {
                Self::new(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))
            }
            _ => Err(GeometryError::CoincidentPoints),
        }
    }

    /// The unique map with `from[i] ↦ to[i]`.
    pub fn from_triples(from: [ExtComplex; 3], to: [ExtComplex; 3]) -> Result<Self, GeometryError> {
        let f = Self::to_zero_one_infinity(from[0], from[1], from[2])?;
        let g = Self::to_zero_one_infinity(to[0], to[1], to[2])?;
        Ok(g.inverse().compose(&f))
    }

    /// Sends `p ↦ 0` and `q ↦ ∞` (and some third point to 1).
    pub fn sending_to_zero_infinity(p: ExtComplex, q: ExtComplex) -> Result<Self, GeometryError> {
        use ExtComplex::*;
        match (p, q) {
            (Finite(p), Finite(q)) => Self::new(ONE, -p, ONE, -q),
            (Finite(p), Infinity) => Self::new(ONE, -p, ZERO, ONE),
            (Infinity, Finite(q)) => Self::new(ZERO, ONE, ONE, -q),
            (Infinity, Infinity) => Err(GeometryError::CoincidentPoints),
        }
    }

    fn conjugated_diagonal(p: ExtComplex, q: ExtComplex, lambda: Complex64) -> Result<Self, GeometryError> {
        if p.chordal_distance(&q) < 1e-14 {
            return Err(GeometryError::CoincidentPoints);
        }
        if let (ExtComplex::Finite(p), ExtComplex::Finite(q)) = (p, q) {
            // Closed form of the conjugate; avoids the rounding of three products.
            let (l, li, pq) = (lambda, lambda.inv(), p - q);
            return Ok(MobiusMap {
                a: (p * li - q * l) / pq,
                b: p * q * (l - li) / pq,
                c: (li - l) / pq,
                d: (p * l - q * li) / pq,
            });
        }
        let n = Self::sending_to_zero_infinity(p, q)?;
        let diag = MobiusMap { a: lambda, b: ZERO, c: ZERO, d: lambda.inv() };
        Ok(n.inverse().compose(&diag).compose(&n))
    }

    /// Rotation of H³ by `angle` about the geodesic from `p` to `q`
    /// (counterclockwise when viewed from `q`).
    pub fn elliptic(p: ExtComplex, q: ExtComplex, angle: f64) -> Result<Self, GeometryError> {
        Self::conjugated_diagonal(p, q, Complex64::from_polar(1.0, angle / 2.0))
    }

    /// Translation by `length` along the geodesic from `p` towards `q`.
    pub fn hyperbolic(p: ExtComplex, q: ExtComplex, length: f64) -> Result<Self, GeometryError> {
        Self::conjugated_diagonal(p, q, Complex64::new((length / 2.0).exp(), 0.0))
    }

    /// Complex translation along `p → q`: translation by `Re(w)` composed with rotation by `Im(w)`.
    pub fn loxodromic(p: ExtComplex, q: ExtComplex, w: Complex64) -> Result<Self, GeometryError> {
        Self::conjugated_diagonal(p, q, (w / 2.0).exp())
    }

    /// Disk automorphism `z ↦ e^{iφ}(z − a)/(1 − āz)`, `|a| < 1`.
    pub fn disk_automorphism(phi: f64, a: Complex64) -> Result<Self, GeometryError> {
        if a.norm() >= 1.0 {
            return Err(GeometryError::OutsideDisk(a.norm()));
        }
        let r = Complex64::from_polar(1.0, phi / 2.0);
        Self::new(r, -r * a, -a.conj() / r, r.inv())
    }

    /// Cayley map from the unit disk to the upper half-plane, `z ↦ i(1 + z)/(1 − z)`.
    pub fn disk_to_upper_half_plane() -> Self {
        let i = Complex64::i();
        Self::new(i, i, -ONE, ONE).expect("Cayley map is regular")
    }

    /// A map from the unit disk onto the upper half-plane with `a ↦ 0` and `b ↦ ∞`,
    /// for distinct points `a`, `b` of the unit circle.
    pub fn disk_to_upper_half_plane_sending(a: Complex64, b: Complex64) -> Result<Self, GeometryError> {
        if (a - b).norm() < 1e-14 {
            return Err(GeometryError::CoincidentPoints);
        }
        // A third boundary point: the midpoint of the counterclockwise arc from a to b.
        let sweep = (b / a).arg().rem_euclid(std::f64::consts::TAU);
        let w = a * Complex64::from_polar(1.0, sweep / 2.0);
        let f0 = (w - a) / (w - b);
        let mut lambda = f0.conj() / f0.norm();
        if (lambda * a / b).im < 0.0 {
            lambda = -lambda;
        }
        let s = lambda.sqrt();
        Self::new(s, -s * a, ONE / s, -b / s)
    }

    /// Whether the map preserves the unit disk (checked on the coefficient pattern
    /// `d = ā`, `c = b̄` up to a common sign).
    pub fn is_disk_preserving(&self, tol: f64) -> bool {
        let plus = (self.d - self.a.conj()).norm() + (self.c - self.b.conj()).norm();
        let minus = (self.d + self.a.conj()).norm() + (self.c + self.b.conj()).norm();
        plus.min(minus) < tol * (1.0 + self.a.norm() + self.b.norm())
    }

    /// The Poincaré extension acting isometrically on the upper half-space.
    pub fn extend(&self, p: &PointH3) -> PointH3 {
        let z = Complex64::new(p.x, p.y);
        let t2 = p.t * p.t;
        let den_c = self.c * z + self.d;
        let den = den_c.norm_sqr() + self.c.norm_sqr() * t2;
        let w = ((self.a * z + self.b) * den_c.conj() + self.a * self.c.conj() * t2) / den;
        PointH3 { x: w.re, y: w.im, t: p.t / den }
    }

    /// Hyperbolic translation length `2 acosh(|tr|/2)` (0 for elliptic and parabolic maps).
    pub fn translation_length(&self) -> f64 {
        let t = self.trace().norm() / 2.0;
        if t <= 1.0 {
            0.0
        } else {
            2.0 * t.acosh()
        }
    }

    /// Largest coefficient difference to `other` after fixing the sign ambiguity.
    pub fn distance(&self, other: &MobiusMap) -> f64 {
        let p = (self.a - other.a).norm()
            + (self.b - other.b).norm()
            + (self.c - other.c).norm()
            + (self.d - other.d).norm();
        let m = (self.a + other.a).norm()
            + (self.b + other.b).norm()
            + (self.c + other.c).norm()
            + (self.d + other.d).norm();
        p.min(m)
    }
}
