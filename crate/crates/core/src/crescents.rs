//! Crescents, their normalization to a wedge, and complex angle scaling maps.
//!
//! The wedge is `W_θ = {z : 0 ≤ arg z ≤ θ}` and the angle scaling map is
//! `S_w(z) = z·exp(w·arg z)`, which sends `W_θ` onto a wedge of angle `(Im w + 1)θ`.
//! In the coordinate `ζ = log z` it is the real-linear map `ζ ↦ ζ + w·Im ζ`, so its Beltrami
//! coefficient is `iw/(2 − iw)·z/z̄` and its dilatation is constant.

use std::f64::consts::TAU;

use num_complex::Complex64;
use thiserror::Error;

use crate::hyperbolic::{Circle, ExtComplex, GeometryError, MobiusMap};

/// Slack allowed on `arg z` when testing wedge membership.
pub const WEDGE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum CrescentError {
    #[error("circles are tangent, disjoint or equal")]
    DegenerateCrescent,
    #[error("the sample point lies on a boundary circle")]
    AmbiguousComponent,
    #[error("point with argument {0} lies outside the wedge")]
    OutsideWedge(f64),
    #[error("angle scaling is not injective: (Im w + 1)θ = {0} is not in (0, 2π)")]
    NotInjective(f64),
    #[error("wedge angle must lie in (0, 2π)")]
    InvalidAngle,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// `arg z` in `[0, 2π)`.
pub fn arg_0_2pi(z: Complex64) -> f64 {
    let a = z.arg().rem_euclid(TAU);
    if a >= TAU {
        0.0
    } else {
        a
    }
}

/// A component of the complement of two transversely intersecting circles.
#[derive(Clone, Debug)]
pub struct Crescent {
    circles: (Circle, Circle),
    vertices: (ExtComplex, ExtComplex),
    angle: f64,
    beta: MobiusMap,
}

impl Crescent {
    /// The component of `Ĉ − (c₁ ∪ c₂)` containing `sample`.
    pub fn new(c1: Circle, c2: Circle, sample: ExtComplex) -> Result<Self, CrescentError> {
        // Tangent or equal circles have |cos| = 1.
        if 1.0 - c1.angle_cos(&c2).abs() < 1e-10 {
            return Err(CrescentError::DegenerateCrescent);
        }
        let (p, q) = c1.intersections(&c2).ok_or(CrescentError::DegenerateCrescent)?;
        if p.chordal_distance(&q) < 1e-9 {
            return Err(CrescentError::DegenerateCrescent);
        }
        let n = MobiusMap::sending_to_zero_infinity(p, q)?;
        // Both circles become lines through 0; collect the four rays.
        let mut rays = Vec::with_capacity(4);
        for c in [c1, c2] {
            let l = c.transform(&n);
            let dir = (Complex64::i() * l.b).arg();
            rays.push(dir.rem_euclid(TAU));
            rays.push((dir + std::f64::consts::PI).rem_euclid(TAU));
        }
        rays.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let s = n.apply(sample).finite().filter(|z| z.norm() > 0.0).ok_or(CrescentError::AmbiguousComponent)?;
        let phi = arg_0_2pi(s);
        if rays.iter().any(|&r| {
            let d = (phi - r).rem_euclid(TAU);
            d < 1e-12 || TAU - d < 1e-12
        }) {
            return Err(CrescentError::AmbiguousComponent);
        }
        // The sector containing phi, bounded below by the last ray before it.
        let lo = rays.iter().rev().find(|&&r| r < phi).copied().unwrap_or(rays[3]);
        let hi = rays.iter().find(|&&r| r > phi).copied().unwrap_or(rays[0] + TAU);
        let angle = (hi - lo).rem_euclid(TAU);
        if angle < 1e-12 {
            return Err(CrescentError::DegenerateCrescent);
        }
        let rot = MobiusMap::new(Complex64::from_polar(1.0, -lo / 2.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, lo / 2.0))?;
        let beta = rot.compose(&n);
        Ok(Crescent { circles: (c1, c2), vertices: (p, q), angle, beta })
    }

    /// The wedge `W_θ` itself, bounded by the positive real axis and the ray at angle θ.
    pub fn wedge(theta: f64) -> Result<Self, CrescentError> {
        if !(theta > 0.0 && theta < std::f64::consts::PI) {
            return Err(CrescentError::InvalidAngle);
        }
        let zero = Complex64::new(0.0, 0.0);
        let c1 = Circle::line(zero, Complex64::new(1.0, 0.0))?;
        let c2 = Circle::line(zero, Complex64::from_polar(1.0, theta))?;
        Self::new(c1, c2, Complex64::from_polar(1.0, theta / 2.0).into())
    }

    pub fn circles(&self) -> (Circle, Circle) {
        self.circles
    }

    pub fn vertices(&self) -> (ExtComplex, ExtComplex) {
        self.vertices
    }

    /// Interior angle.
    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// A Möbius map `β` with `β(C) = W_θ`.
    pub fn normalize(&self) -> MobiusMap {
        self.beta
    }

    pub fn contains(&self, z: ExtComplex) -> bool {
        match self.beta.apply(z) {
            ExtComplex::Finite(w) if w.norm() > 0.0 => arg_0_2pi(w) <= self.angle,
            _ => false,
        }
    }
}

/// The map `S_w` on the wedge `W_θ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleScaling {
    pub w: Complex64,
    pub theta: f64,
}

impl AngleScaling {
    pub fn new(w: Complex64, theta: f64) -> Result<Self, CrescentError> {
        if !(theta > 0.0 && theta < TAU) {
            return Err(CrescentError::InvalidAngle);
        }
        Ok(AngleScaling { w, theta })
    }

    /// `(Im w + 1)θ`.
    pub fn image_angle(&self) -> f64 {
        (self.w.im + 1.0) * self.theta
    }

    pub fn is_injective(&self) -> bool {
        let a = self.image_angle();
        a > 0.0 && a < TAU
    }

    pub fn apply(&self, z: Complex64) -> Result<Complex64, CrescentError> {
        if z.norm() == 0.0 {
            return Ok(z);
        }
        let a = arg_0_2pi(z);
        // Points just below the positive real axis are on the boundary ray arg = 0.
        let a = if a > self.theta + WEDGE_TOLERANCE && TAU - a < WEDGE_TOLERANCE { 0.0 } else { a };
        if a > self.theta + WEDGE_TOLERANCE {
            return Err(CrescentError::OutsideWedge(a));
        }
        Ok(z * (self.w * a).exp())
    }

    /// Constant part of the Beltrami coefficient: `μ(z) = beltrami_constant()·z/z̄`.
    pub fn beltrami_constant(&self) -> Complex64 {
        let iw = Complex64::i() * self.w;
        iw / (Complex64::new(2.0, 0.0) - iw)
    }

    pub fn beltrami(&self, z: Complex64) -> Complex64 {
        self.beltrami_constant() * z / z.conj()
    }

    /// Maximal dilatation `K = (1 + |μ|)/(1 − |μ|)`.
    pub fn dilatation(&self) -> Result<f64, CrescentError> {
        if !self.is_injective() {
            return Err(CrescentError::NotInjective(self.image_angle()));
        }
        let k = self.beltrami_constant().norm();
        Ok((1.0 + k) / (1.0 - k))
    }

    /// The single scaling equal to `self` followed by `S_{w2}` on the image wedge.
    pub fn then(&self, w2: Complex64) -> Result<AngleScaling, CrescentError> {
        let (a1, b1) = (self.w.re, self.w.im);
        let w = Complex64::new(a1 + (1.0 + b1) * w2.re, (1.0 + b1) * (1.0 + w2.im) - 1.0);
        AngleScaling::new(w, self.theta)
    }

    /// The scaling applied on the image wedge by [`AngleScaling::then`].
    pub fn followed_by(&self, w2: Complex64) -> Result<AngleScaling, CrescentError> {
        AngleScaling::new(w2, self.image_angle())
    }
}

/// Dilatation of `S_w`; fails when the map is not injective on `W_θ`.
pub fn scaling_dilatation(a: &AngleScaling) -> Result<f64, CrescentError> {
    a.dilatation()
}

/// `w = i(t − t₀)/t₀`, the scaling parameter used on crescents when moving from `t₀` to `t`.
pub fn scaling_parameter(t: Complex64, t0: Complex64) -> Complex64 {
    Complex64::i() * (t - t0) / t0
}

/// `L_t = (1 + |κ|)/(1 − |κ|)` with `κ = (t − t₀)/(t + t₀)`.
pub fn quasiregular_constant(t: Complex64, t0: Complex64) -> f64 {
    let k = ((t - t0) / (t + t0)).norm();
    (1.0 + k) / (1.0 - k)
}

/// A complex angle scaling map `γ ∘ S_w ∘ β` on a crescent.
#[derive(Clone, Debug)]
pub struct CrescentScaling {
    pub beta: MobiusMap,
    pub scaling: AngleScaling,
    pub gamma: MobiusMap,
}

impl CrescentScaling {
    pub fn new(crescent: &Crescent, w: Complex64, gamma: MobiusMap) -> Result<Self, CrescentError> {
        let scaling = AngleScaling::new(w, crescent.angle())?;
        if !scaling.is_injective() {
            return Err(CrescentError::NotInjective(scaling.image_angle()));
        }
        Ok(CrescentScaling { beta: crescent.normalize(), scaling, gamma })
    }

    pub fn apply(&self, z: ExtComplex) -> Result<ExtComplex, CrescentError> {
        // The vertices are fixed by S_w; snap rounding near them.
        let u = self.beta.apply(z);
        if u.chordal_distance(&ExtComplex::Infinity) < 1e-12 {
            return Ok(self.gamma.apply(ExtComplex::Infinity));
        }
        let u = u.finite().expect("finite after the check above");
        if u.norm() < 1e-12 {
            return Ok(self.gamma.apply_finite(Complex64::new(0.0, 0.0)));
        }
        Ok(self.gamma.apply_finite(self.scaling.apply(u)?))
    }

    pub fn dilatation(&self) -> Result<f64, CrescentError> {
        self.scaling.dilatation()
    }
}
