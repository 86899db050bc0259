//! Points of the Riemann sphere and the stereographic identification with S².

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A point of the extended complex plane `Ĉ = ℂ ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ExtComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtComplex {
    pub fn new(re: f64, im: f64) -> Self {
        ExtComplex::Finite(Complex64::new(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtComplex::Infinity)
    }

    pub fn finite(&self) -> Option<Complex64> {
        match *self {
            ExtComplex::Finite(z) => Some(z),
            ExtComplex::Infinity => None,
        }
    }

    /// Chordal distance on the unit Riemann sphere (diameter 2).
    pub fn chordal_distance(&self, other: &ExtComplex) -> f64 {
        match (*self, *other) {
            (ExtComplex::Infinity, ExtComplex::Infinity) => 0.0,
            (ExtComplex::Finite(z), ExtComplex::Infinity)
            | (ExtComplex::Infinity, ExtComplex::Finite(z)) => 2.0 / (1.0 + z.norm_sqr()).sqrt(),
            (ExtComplex::Finite(z), ExtComplex::Finite(w)) => {
                2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt()
            }
        }
    }

    /// Stereographic projection onto the unit sphere, from the south pole:
    /// `0 ↦ (0,0,1)`, `∞ ↦ (0,0,-1)`.
    pub fn to_sphere(&self) -> [f64; 3] {
        match *self {
            ExtComplex::Infinity => [0.0, 0.0, -1.0],
            ExtComplex::Finite(z) => {
                let r2 = z.norm_sqr();
                let s = 1.0 + r2;
                [2.0 * z.re / s, 2.0 * z.im / s, (1.0 - r2) / s]
            }
        }
    }

    /// Inverse of [`ExtComplex::to_sphere`]. The input is normalized first.
    pub fn from_sphere(u: [f64; 3]) -> Self {
        let n = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
        let (x, y, w) = (u[0] / n, u[1] / n, u[2] / n);
        if w <= -1.0 + 1e-15 && x.hypot(y) < 1e-12 {
            return ExtComplex::Infinity;
        }
        if w < 0.0 {
            // z = (x+iy)/(1+w) loses precision near the south pole; use 1/z̄ = (x+iy)/(1-w) instead.
            let q = Complex64::new(x, y) / (1.0 - w);
            ExtComplex::Finite(q / q.norm_sqr())
        } else {
            ExtComplex::Finite(Complex64::new(x, y) / (1.0 + w))
        }
    }
}

impl From<Complex64> for ExtComplex {
    fn from(z: Complex64) -> Self {
        ExtComplex::Finite(z)
    }
}

impl std::fmt::Display for ExtComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtComplex::Finite(z) => write!(f, "{}{:+}i", z.re, z.im),
            ExtComplex::Infinity => write!(f, "∞"),
        }
    }
}
