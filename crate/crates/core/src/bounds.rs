//! Explicit bounds on the dilatation of the map from a domain to its dome.
//!
//! Every input is a dimensionless hyperbolic length: `ν` is a lower bound on the injectivity
//! radius of the domain in its Poincaré metric and `ν̂` the analogous bound for the dome in its
//! intrinsic metric. Inputs outside the stated hypotheses return an error instead of a number.

use std::f64::consts::{E, PI, SQRT_2};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("{name} = {value} lies outside {domain}")]
    OutOfDomain { name: &'static str, value: f64, domain: &'static str },
    #[error("{name} must be positive, got {value}")]
    NonpositiveInput { name: &'static str, value: f64 },
}

pub type Result<T> = std::result::Result<T, BoundsError>;

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(BoundsError::NonpositiveInput { name, value })
    }
}

/// `m = cosh⁻¹(e²)`.
pub fn m() -> f64 {
    (E * E).acosh()
}

/// `e^m = e² + √(e⁴ − 1)`, evaluated without going through `m`.
pub fn exp_m() -> f64 {
    E * E + (E.powi(4) - 1.0).sqrt()
}

/// `k = 4 + log(3 + 2√2)`.
pub fn k() -> f64 {
    4.0 + (3.0 + 2.0 * SQRT_2).ln()
}

/// Numerical constants shared by the bounds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Constants {
    pub m: f64,
    pub k: f64,
    pub c2: f64,
    /// Dilatation of the crescent-scaling factor used for the domain bound.
    pub k_t0: f64,
    /// Height used with `k_t0`.
    pub y0: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants { m: m(), k: k(), c2: crate::pleating::C2_DEFAULT, k_t0: 2.0, y0: 1.0 / 3.0 }
    }
}

/// Right end of the domain of [`f`]: `2 sinh⁻¹(1)`.
pub fn f_domain_end() -> f64 {
    2.0 * 1f64.asinh()
}

/// `F(x) = x/2 + sinh⁻¹(sinh(x/2) / √(1 − sinh²(x/2)))` on `[0, 2 sinh⁻¹ 1)`.
pub fn f(x: f64) -> Result<f64> {
    if !(0.0..f_domain_end()).contains(&x) {
        return Err(BoundsError::OutOfDomain { name: "x", value: x, domain: "[0, 2 asinh 1)" });
    }
    let s = (x / 2.0).sinh();
    let d = 1.0 - s * s;
    if d <= 0.0 {
        // Rounding at the very end of the interval.
        return Ok(f64::INFINITY);
    }
    Ok(x / 2.0 + (s / d.sqrt()).asinh())
}

/// `G = F⁻¹`, by bisection.
pub fn f_inverse(y: f64) -> Result<f64> {
    if !(y >= 0.0 && y.is_finite()) {
        return Err(BoundsError::OutOfDomain { name: "y", value: y, domain: "[0, inf)" });
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0, f_domain_end());
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid)? < y {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `g(ν) = e^{−m} e^{−π²/2ν} / 2`, a lower bound for `ν̂` in terms of `ν`.
pub fn g(nu: f64) -> Result<f64> {
    positive("nu", nu)?;
    Ok((-m() - PI * PI / (2.0 * nu)).exp() / 2.0)
}

/// A bound together with a coarser closed form that dominates it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Bound {
    pub value: f64,
    pub relaxed: f64,
}

/// Roundness of the bending lamination of a dome with injectivity radius at least `ν̂`:
/// `2π⌈1/G(ν̂)⌉ ≤ 4π/ν̂ + 2π`.
pub fn roundness_bound_dome(nu_hat: f64) -> Result<Bound> {
    positive("nu_hat", nu_hat)?;
    let gv = f_inverse(nu_hat)?;
    let count = if gv >= 1.0 { 1.0 } else { (1.0 / gv).ceil() };
    Ok(Bound { value: 2.0 * PI * count, relaxed: 4.0 * PI / nu_hat + 2.0 * PI })
}

/// The same roundness bound in terms of the domain: `8π e^m e^{π²/2ν} + 2π ≤ 370 e^{π²/2ν} + 2π`.
pub fn roundness_bound_domain(nu: f64) -> Result<Bound> {
    positive("nu", nu)?;
    let x = (PI * PI / (2.0 * nu)).exp();
    Ok(Bound { value: 8.0 * PI * exp_m() * x + 2.0 * PI, relaxed: 370.0 * x + 2.0 * PI })
}

/// `M(ν) = 48π e^m e^{π²/2ν} + 12π`, relaxed to `2220 e^{π²/2ν} + 38`.
pub fn m_bound(nu: f64) -> Result<Bound> {
    let tight = roundness_bound_domain(nu)?.value;
    let x = (PI * PI / (2.0 * nu)).exp();
    Ok(Bound { value: 6.0 * tight, relaxed: 2220.0 * x + 38.0 })
}

/// `N(ν̂) = 24π/ν̂ + 12π`.
pub fn n_bound(nu_hat: f64) -> Result<f64> {
    Ok(6.0 * roundness_bound_dome(nu_hat)?.relaxed)
}

/// Lipschitz constant of the nearest point retraction, `2√2 (k + π²/2ν)`.
pub fn lipschitz_bound(nu: f64) -> Result<f64> {
    positive("nu", nu)?;
    Ok(2.0 * SQRT_2 * (k() + PI * PI / (2.0 * nu)))
}

/// Lower bound `ν e^{π²/(2√e ν)} / (π² e^{π/2})` for the dilatation of any map homotopic to the
/// retraction, valid for `ν ∈ (0, 0.5)`.
pub fn lower_bound_k(nu: f64) -> Result<f64> {
    if !(nu > 0.0 && nu < 0.5) {
        return Err(BoundsError::OutOfDomain { name: "nu", value: nu, domain: "(0, 0.5)" });
    }
    Ok(nu * (PI * PI / (2.0 * E.sqrt() * nu)).exp() / (PI * PI * (PI / 2.0).exp()))
}

/// Maximal modulus of an annulus around a geodesic of length `l`: `(π/l, π/(l e^{l/2}))`.
pub fn modulus_bounds(l: f64) -> Result<(f64, f64)> {
    positive("l", l)?;
    Ok((PI / l, PI / (l * (l / 2.0).exp())))
}

/// Upper bound `4π e^{.502π} e^{−π²/(√e L)}` on the dome length of the geodesic homotopic to the
/// retraction of a closed geodesic of length `L ≤ 1`.
pub fn geodesic_image_length_bound(l: f64) -> Result<f64> {
    positive("L", l)?;
    Ok(4.0 * PI * (0.502 * PI).exp() * (-PI * PI / (E.sqrt() * l)).exp())
}

/// Length bound `R(ν)` for a geodesic in the manifold relative to its length in the conformal boundary.
pub fn canary_r(nu: f64) -> Result<f64> {
    positive("nu", nu)?;
    let k = k();
    Ok((SQRT_2 * (k + 2f64.ln())).max(SQRT_2 * (k * nu + 8.0 * PI * k + 2.0 * PI * PI) / nu))
}

/// Length bound `45 L e^{L/2}` for the dome geodesic homotopic to the retraction of a curve of length `L`.
pub fn retraction_length_bound(l: f64) -> Result<f64> {
    positive("L", l)?;
    Ok(45.0 * l * (l / 2.0).exp())
}

/// Steps of the lower-bound argument at a given `ν`, with `L = 2ν`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LowerBoundChain {
    pub l: f64,
    pub l_prime: f64,
    /// Lower bound for the modulus of the dome annulus, `π/(L' e^{L'/2})`.
    pub dome_modulus: f64,
    /// `K ≥ L·mod(A')/π`, from comparing the two moduli.
    pub k_from_moduli: f64,
    /// The coarser `2L/(πL')`, using `mod(A') > 2/L'`.
    pub k_coarse: f64,
    pub stated: f64,
}

/// Replays the lower-bound argument at `ν`.
pub fn lower_bound_chain(nu: f64) -> Result<LowerBoundChain> {
    let stated = lower_bound_k(nu)?;
    let l = 2.0 * nu;
    let l_prime = geodesic_image_length_bound(l)?;
    let dome_modulus = modulus_bounds(l_prime)?.1;
    Ok(LowerBoundChain {
        l,
        l_prime,
        dome_modulus,
        k_from_moduli: l * dome_modulus / PI,
        k_coarse: 2.0 * l / (PI * l_prime),
        stated,
    })
}

/// One inequality between two computed numbers.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Inequality {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl Inequality {
    fn le(name: &'static str, lhs: f64, rhs: f64) -> Self {
        Inequality { name, lhs, rhs, holds: lhs <= rhs }
    }
}

/// Every bound available for the given injectivity radii.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub nu: Option<f64>,
    pub nu_hat: Option<f64>,
    pub g: Option<f64>,
    pub roundness_domain: Option<Bound>,
    pub m: Option<Bound>,
    pub lipschitz: Option<f64>,
    pub lower_bound_k: Option<f64>,
    pub g_inverse_nu_hat: Option<f64>,
    pub roundness_dome: Option<Bound>,
    pub n: Option<f64>,
}

impl BoundReport {
    pub fn new(nu: Option<f64>, nu_hat: Option<f64>) -> Result<Self> {
        let mut r = BoundReport {
            nu,
            nu_hat,
            g: None,
            roundness_domain: None,
            m: None,
            lipschitz: None,
            lower_bound_k: None,
            g_inverse_nu_hat: None,
            roundness_dome: None,
            n: None,
        };
        if let Some(nu) = nu {
            r.g = Some(g(nu)?);
            r.roundness_domain = Some(roundness_bound_domain(nu)?);
            r.m = Some(m_bound(nu)?);
            r.lipschitz = Some(lipschitz_bound(nu)?);
            r.lower_bound_k = lower_bound_k(nu).ok();
        }
        if let Some(nh) = nu_hat {
            r.g_inverse_nu_hat = Some(f_inverse(nh)?);
            r.roundness_dome = Some(roundness_bound_dome(nh)?);
            r.n = Some(n_bound(nh)?);
        }
        Ok(r)
    }

    /// The inequalities relating the stored values, recomputed on every call.
    pub fn inequalities(&self) -> Vec<Inequality> {
        let mut out = Vec::new();
        if let Some(b) = self.roundness_domain {
            out.push(Inequality::le("roundness_domain <= relaxed", b.value, b.relaxed));
        }
        if let Some(b) = self.m {
            out.push(Inequality::le("M <= relaxed", b.value, b.relaxed));
            if let Some(lo) = self.lower_bound_k {
                out.push(Inequality::le("lower_bound_K <= M", lo, b.value));
            }
        }
        if let Some(b) = self.roundness_dome {
            out.push(Inequality::le("roundness_dome <= relaxed", b.value, b.relaxed));
        }
        if let (Some(nh), Some(gn)) = (self.nu_hat, self.g) {
            // A dome whose domain has radius ν has radius at least g(ν).
            out.push(Inequality::le("g(nu) <= nu_hat", gn, nh));
        }
        if let (Some(lo), Some(n)) = (self.lower_bound_k, self.n) {
            out.push(Inequality::le("lower_bound_K <= N", lo, n));
        }
        out
    }

    pub fn all_hold(&self) -> bool {
        self.inequalities().iter().all(|i| i.holds)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("plain data serializes");
        v["inequalities"] = serde_json::to_value(self.inequalities()).expect("plain data serializes");
        v
    }
}
