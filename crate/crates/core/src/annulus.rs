//! The round annulus `Ω(s) = {1 < |z| < e^s}` and its dome, where everything is explicit.

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::bounds;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnnulusError {
    #[error("annulus parameter s must be positive, got {0}")]
    NonpositiveModulusParameter(f64),
    #[error("r2 is only defined while nu_hat < 1, got nu_hat = {0}")]
    RatioUndefined(f64),
}

/// Closed-form data of `Ω(s)` and `Dome(Ω(s))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AnnulusGeometry {
    pub s: f64,
    pub modulus: f64,
    pub core_length: f64,
    pub nu: f64,
    pub dome_modulus: f64,
    pub dome_core_length: f64,
    pub nu_hat: f64,
    /// Minimal dilatation of a map `Ω(s) → Dome(Ω(s))`.
    pub k: f64,
}

pub fn annulus_geometry(s: f64) -> Result<AnnulusGeometry, AnnulusError> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(AnnulusError::NonpositiveModulusParameter(s));
    }
    let sh = (s / 2.0).sinh();
    Ok(AnnulusGeometry {
        s,
        modulus: s / (2.0 * PI),
        core_length: 2.0 * PI * PI / s,
        nu: PI * PI / s,
        dome_modulus: sh / 2.0,
        dome_core_length: 2.0 * PI / sh,
        nu_hat: PI / sh,
        k: PI * sh / s,
    })
}

/// Verdicts of the general bounds applied to `Ω(s)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnnulusBoundsReport {
    pub geometry: AnnulusGeometry,
    pub m: f64,
    pub n: f64,
    /// Present when `ν(s) < 0.5`.
    pub lower_bound_k: Option<f64>,
    pub k_le_m: bool,
    pub k_le_n: bool,
    pub lower_le_k: Option<bool>,
}

impl AnnulusBoundsReport {
    pub fn all_hold(&self) -> bool {
        self.k_le_m && self.k_le_n && self.lower_le_k.unwrap_or(true)
    }
}

pub fn verify_bounds(s: f64) -> Result<AnnulusBoundsReport, AnnulusError> {
    let geometry = annulus_geometry(s)?;
    // ν and ν̂ are positive here, so the bounds cannot fail.
    let m = bounds::m_bound(geometry.nu).expect("nu > 0").value;
    let n = bounds::n_bound(geometry.nu_hat).expect("nu_hat > 0");
    let lower_bound_k = bounds::lower_bound_k(geometry.nu).ok();
    Ok(AnnulusBoundsReport {
        geometry,
        m,
        n,
        lower_bound_k,
        k_le_m: geometry.k <= m,
        k_le_n: geometry.k <= n,
        lower_le_k: lower_bound_k.map(|l| l <= geometry.k),
    })
}

/// `r1 = 2πK/(ν e^{π²/2ν})` and `r2 = 2Kν̂ log(1/ν̂)/π²`, the ratios of `K(s)` to its two
/// asymptotic forms. `r2` is `None` once `ν̂ ≥ 1`.
pub fn asymptotic_ratios(s: f64) -> Result<(f64, Option<f64>), AnnulusError> {
    let a = annulus_geometry(s)?;
    let r1 = a.k * 2.0 * PI / (a.nu * (PI * PI / (2.0 * a.nu)).exp());
    let r2 = (a.nu_hat < 1.0).then(|| a.k * 2.0 * a.nu_hat * (1.0 / a.nu_hat).ln() / (PI * PI));
    Ok((r1, r2))
}

/// `r2` alone, with an error when it is undefined.
pub fn second_ratio(s: f64) -> Result<f64, AnnulusError> {
    let a = annulus_geometry(s)?;
    asymptotic_ratios(s)?.1.ok_or(AnnulusError::RatioUndefined(a.nu_hat))
}

/// Evenly spaced values of `s` for tables.
pub fn s_grid(s_min: f64, s_max: f64, points: usize) -> Vec<f64> {
    match points {
        0 => vec![],
        1 => vec![s_min],
        _ => (0..points).map(|i| s_min + (s_max - s_min) * i as f64 / (points - 1) as f64).collect(),
    }
}
