//! Grid estimates of the Beltrami coefficient `μ = f_z̄ / f_z` of a sampled map.
//!
//! Derivatives use a 3×3 stencil: the axis and diagonal central differences are both second
//! order, and weighting them 2:1 cancels the `h²` term that would otherwise make a holomorphic
//! map look slightly non-conformal. For affine maps every weighting is exact.
//!
//! A [`GridSample`] is either Cartesian, sampling `f(x + iy)`, or log-polar, sampling
//! `f(e^{ρ + iθ})` on a grid in `(ρ, θ)`. The log-polar chart is conformal, so `|μ|` is the
//! same in both coordinates and only the argument of `μ` is rotated back. On log-polar grids the
//! values are also read through `log`, which does not change `μ` either.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::crescents::{self, AngleScaling, CrescentError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QcError {
    #[error("no valid cells in the field")]
    EmptyField,
    #[error("grid needs spacing > 0 and at least 3×3 samples")]
    DegenerateGrid,
    #[error(transparent)]
    Crescent(#[from] CrescentError),
}

/// Relative size of `|f_z|` below which a cell is flagged degenerate.
pub const DEGENERATE_JACOBIAN: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GridKind {
    Cartesian,
    LogPolar,
}

/// Values of a map on a uniform grid. Missing values (`None`) are treated as masked.
#[derive(Clone, Debug)]
pub struct GridSample {
    pub kind: GridKind,
    /// Parameter of sample `(0, 0)`: `x + iy` or `ρ + iθ`.
    pub origin: Complex64,
    pub h: f64,
    pub nx: usize,
    pub ny: usize,
    values: Vec<Option<Complex64>>,
}

impl GridSample {
    fn build<F>(kind: GridKind, origin: Complex64, h: f64, nx: usize, ny: usize, f: F) -> Result<Self, QcError>
    where
        F: Fn(Complex64) -> Option<Complex64> + Sync,
    {
        if !(h > 0.0) || nx < 3 || ny < 3 {
            return Err(QcError::DegenerateGrid);
        }
        let mut s = GridSample { kind, origin, h, nx, ny, values: Vec::new() };
        s.values = (0..nx * ny)
            .into_par_iter()
            .map(|k| f(s.position(k % nx, k / nx)).filter(|v| v.re.is_finite() && v.im.is_finite()))
            .collect();
        Ok(s)
    }

    /// Samples `f` at `origin + h(i + ij)` for `i < nx`, `j < ny`.
    pub fn cartesian<F>(origin: Complex64, h: f64, nx: usize, ny: usize, f: F) -> Result<Self, QcError>
    where
        F: Fn(Complex64) -> Option<Complex64> + Sync,
    {
        Self::build(GridKind::Cartesian, origin, h, nx, ny, f)
    }

    /// Samples `f(e^ζ)` at `ζ = origin + h(i + ij)`.
    pub fn log_polar<F>(origin: Complex64, h: f64, nx: usize, ny: usize, f: F) -> Result<Self, QcError>
    where
        F: Fn(Complex64) -> Option<Complex64> + Sync,
    {
        Self::build(GridKind::LogPolar, origin, h, nx, ny, f)
    }

    /// Log-polar grid over `{r_in < |z| < r_out, θ0 < arg z < θ1}` with `n` samples across the angle.
    pub fn annular_sector<F>(r_in: f64, r_out: f64, theta0: f64, theta1: f64, n: usize, f: F) -> Result<Self, QcError>
    where
        F: Fn(Complex64) -> Option<Complex64> + Sync,
    {
        if !(r_in > 0.0 && r_out > r_in && theta1 > theta0) || n < 3 {
            return Err(QcError::DegenerateGrid);
        }
        let h = (theta1 - theta0) / (n - 1) as f64;
        let nx = (((r_out / r_in).ln() / h).round() as usize + 1).max(3);
        Self::log_polar(Complex64::new(r_in.ln(), theta0), h, nx, n, f)
    }

    /// Grid parameter of sample `(i, j)`.
    pub fn point(&self, i: usize, j: usize) -> Complex64 {
        self.origin + Complex64::new(i as f64, j as f64) * self.h
    }

    /// The point of the plane sampled at `(i, j)`.
    pub fn position(&self, i: usize, j: usize) -> Complex64 {
        match self.kind {
            GridKind::Cartesian => self.point(i, j),
            GridKind::LogPolar => self.point(i, j).exp(),
        }
    }

    pub fn value(&self, i: usize, j: usize) -> Option<Complex64> {
        self.values[j * self.nx + i]
    }

    /// Drops the samples at positions where `pred` holds.
    pub fn mask_where<P: Fn(Complex64) -> bool>(mut self, pred: P) -> Self {
        for j in 0..self.ny {
            for i in 0..self.nx {
                if pred(self.position(i, j)) {
                    self.values[j * self.nx + i] = None;
                }
            }
        }
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CellStatus {
    Valid,
    /// On the grid boundary or next to a missing sample.
    Masked,
    DegenerateJacobian,
    /// `|f_z̄| > |f_z|`; the reported `μ` has modulus above 1.
    OrientationReversing,
}

/// Per-sample Beltrami coefficients, in the coordinate of the sampled plane.
#[derive(Clone, Debug)]
pub struct BeltramiField {
    pub kind: GridKind,
    pub origin: Complex64,
    pub h: f64,
    pub nx: usize,
    pub ny: usize,
    pub mu: Vec<Complex64>,
    pub jacobian: Vec<f64>,
    pub status: Vec<CellStatus>,
}

/// `(f_z, f_z̄)` from the 3×3 neighbourhood `v[dj + 1][di + 1]`.
fn wirtinger(v: &[[Complex64; 3]; 3], h: f64) -> (Complex64, Complex64) {
    let i = Complex64::i();
    let dx = (v[1][2] - v[1][0]) / (2.0 * h);
    let dy = (v[2][1] - v[0][1]) / (2.0 * h);
    let d = 2.0 * std::f64::consts::SQRT_2 * h;
    let u = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    let du = (v[2][2] - v[0][0]) / d;
    let dv = (v[2][0] - v[0][2]) / d;
    let vdir = i * u;
    let (fz_a, fzb_a) = ((dx - i * dy) / 2.0, (dx + i * dy) / 2.0);
    let (fz_d, fzb_d) = ((u.conj() * du + vdir.conj() * dv) / 2.0, (u * du + vdir * dv) / 2.0);
    ((2.0 * fz_a + fz_d) / 3.0, (2.0 * fzb_a + fzb_d) / 3.0)
}

/// Estimates `μ` at every interior sample with a complete neighbourhood.
pub fn beltrami_estimate(f: &GridSample) -> BeltramiField {
    let (nx, ny) = (f.nx, f.ny);
    let cells: Vec<(Complex64, Complex64, bool)> = (0..nx * ny)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k % nx, k / nx);
            let zero = Complex64::new(0.0, 0.0);
            if i == 0 || j == 0 || i + 1 == nx || j + 1 == ny {
                return (zero, zero, false);
            }
            let mut v = [[zero; 3]; 3];
            for (dj, row) in v.iter_mut().enumerate() {
                for (di, x) in row.iter_mut().enumerate() {
                    match f.value(i + di - 1, j + dj - 1) {
                        Some(val) => *x = val,
                        None => return (zero, zero, false),
                    }
                }
            }
            if f.kind == GridKind::LogPolar && v[1][1].norm() > 0.0 {
                // Post-composing with a local branch of log leaves μ unchanged and makes
                // power maps and angle scalings affine in this chart.
                let c = v[1][1];
                if v.iter().flatten().any(|x| x.norm() == 0.0) {
                    return (zero, zero, false);
                }
                for x in v.iter_mut().flatten() {
                    *x = (*x / c).ln();
                }
            }
            let (fz, fzb) = wirtinger(&v, f.h);
            (fz, fzb, true)
        })
        .collect();
    let present: Vec<f64> = cells.iter().filter(|c| c.2).map(|c| c.0.norm() + c.1.norm()).collect();
    let scale = if present.is_empty() { 0.0 } else { present.iter().sum::<f64>() / present.len() as f64 };
    let mut mu = Vec::with_capacity(nx * ny);
    let mut jacobian = Vec::with_capacity(nx * ny);
    let mut status = Vec::with_capacity(nx * ny);
    for (k, &(fz, fzb, ok)) in cells.iter().enumerate() {
        jacobian.push(fz.norm_sqr() - fzb.norm_sqr());
        if !ok {
            mu.push(Complex64::new(0.0, 0.0));
            status.push(CellStatus::Masked);
        } else if fzb.norm() > fz.norm() {
            mu.push(if fz.norm() > 0.0 { fzb / fz } else { Complex64::new(f64::INFINITY, 0.0) });
            status.push(CellStatus::OrientationReversing);
        } else if fz.norm() < DEGENERATE_JACOBIAN * scale || scale == 0.0 {
            mu.push(Complex64::new(0.0, 0.0));
            status.push(CellStatus::DegenerateJacobian);
        } else {
            let mut m = fzb / fz;
            if f.kind == GridKind::LogPolar {
                // μ_f(z) = μ_{f∘exp}(ζ)·z/z̄ with arg z = Im ζ.
                m *= Complex64::from_polar(1.0, 2.0 * f.point(k % nx, k / nx).im);
            }
            mu.push(m);
            status.push(CellStatus::Valid);
        }
    }
    BeltramiField { kind: f.kind, origin: f.origin, h: f.h, nx, ny, mu, jacobian, status }
}

impl BeltramiField {
    pub fn position(&self, i: usize, j: usize) -> Complex64 {
        let p = self.origin + Complex64::new(i as f64, j as f64) * self.h;
        match self.kind {
            GridKind::Cartesian => p,
            GridKind::LogPolar => p.exp(),
        }
    }

    pub fn status(&self, i: usize, j: usize) -> CellStatus {
        self.status[j * self.nx + i]
    }

    pub fn mu(&self, i: usize, j: usize) -> Complex64 {
        self.mu[j * self.nx + i]
    }

    /// `(1 + |μ|)/(1 − |μ|)` on valid cells.
    pub fn k(&self, i: usize, j: usize) -> Option<f64> {
        (self.status(i, j) == CellStatus::Valid).then(|| {
            let a = self.mu(i, j).norm();
            (1.0 + a) / (1.0 - a)
        })
    }

    pub fn count(&self, s: CellStatus) -> usize {
        self.status.iter().filter(|&&c| c == s).count()
    }

    /// Valid cells as `(i, j, position, μ)`.
    pub fn valid_cells(&self) -> impl Iterator<Item = (usize, usize, Complex64, Complex64)> + '_ {
        (0..self.nx * self.ny).filter(|&k| self.status[k] == CellStatus::Valid).map(move |k| {
            let (i, j) = (k % self.nx, k / self.nx);
            (i, j, self.position(i, j), self.mu[k])
        })
    }

    /// `x,y,mu_re,mu_im,k` for every valid cell.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,mu_re,mu_im,k\n");
        for (i, j, z, m) in self.valid_cells() {
            let k = self.k(i, j).expect("valid cell");
            out.push_str(&format!("{},{},{},{},{}\n", z.re, z.im, m.re, m.im, k));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DilatationStats {
    pub sup: f64,
    /// Position of the cell attaining `sup`.
    pub sup_at: [f64; 2],
    pub mean: f64,
    /// `(p, K)` for `p` in 0.5, 0.9, 0.99.
    pub quantiles: Vec<(f64, f64)>,
    pub cells: usize,
    pub orientation_reversing: usize,
    pub degenerate: usize,
}

pub fn dilatation_stats(b: &BeltramiField) -> Result<DilatationStats, QcError> {
    let mut ks: Vec<(f64, Complex64)> =
        b.valid_cells().map(|(i, j, z, _)| (b.k(i, j).expect("valid cell"), z)).collect();
    if ks.is_empty() {
        return Err(QcError::EmptyField);
    }
    ks.sort_by(|a, b| a.0.total_cmp(&b.0));
    let n = ks.len();
    let (sup, at) = ks[n - 1];
    let quantiles = [0.5, 0.9, 0.99]
        .iter()
        .map(|&p| (p, ks[((p * n as f64).ceil() as usize).clamp(1, n) - 1].0))
        .collect();
    Ok(DilatationStats {
        sup,
        sup_at: [at.re, at.im],
        mean: ks.iter().map(|k| k.0).sum::<f64>() / n as f64,
        quantiles,
        cells: n,
        orientation_reversing: b.count(CellStatus::OrientationReversing),
        degenerate: b.count(CellStatus::DegenerateJacobian),
    })
}

/// Grid check of the dilatation of `S_w` on the wedge `W_θ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingReport {
    pub w: [f64; 2],
    pub theta: f64,
    pub predicted: f64,
    /// `L_t`, when the parameter came from `(t, t₀)`.
    pub l_t: Option<f64>,
    pub stats: DilatationStats,
    /// Largest `|K_est − predicted|` over valid cells.
    pub max_deviation: f64,
    /// Largest `|μ_est − μ|` against the closed form.
    pub max_mu_error: f64,
}

fn scaling_report(s: AngleScaling, grid: GridSample) -> Result<ScalingReport, QcError> {
    let predicted = crescents::scaling_dilatation(&s)?;
    let field = beltrami_estimate(&grid);
    let stats = dilatation_stats(&field)?;
    let mut max_deviation = 0f64;
    let mut max_mu_error = 0f64;
    for (i, j, z, m) in field.valid_cells() {
        max_deviation = max_deviation.max((field.k(i, j).expect("valid") - predicted).abs());
        max_mu_error = max_mu_error.max((m - s.beltrami(z)).norm());
    }
    let w = s.w;
    Ok(ScalingReport { w: [w.re, w.im], theta: s.theta, predicted, l_t: None, stats, max_deviation, max_mu_error })
}

/// Samples `S_w` on a log-polar grid over `{e⁻¹ < |z| < e} ∩ W_θ` with `n` samples across the
/// angle, masking samples within `2h` of the wedge edges.
pub fn verify_scaling_dilatation(w: Complex64, theta: f64, n: usize) -> Result<ScalingReport, QcError> {
    let s = AngleScaling::new(w, theta)?;
    s.dilatation()?;
    let grid = GridSample::annular_sector((-1f64).exp(), 1f64.exp(), 0.0, theta, n, |z| s.apply(z).ok())?;
    let edge = 2.0 * grid.h;
    let grid = grid.mask_where(|z| {
        let a = crescents::arg_0_2pi(z);
        a.min(std::f64::consts::TAU - a) < edge || (a - theta).abs() < edge
    });
    scaling_report(s, grid)
}

/// The same check on a Cartesian `n × n` grid over `[-1, 1]²`, keeping `|z| > 0.25`.
pub fn verify_scaling_dilatation_cartesian(w: Complex64, theta: f64, n: usize) -> Result<ScalingReport, QcError> {
    let s = AngleScaling::new(w, theta)?;
    s.dilatation()?;
    let h = 2.0 / (n - 1).max(1) as f64;
    let edge = 2.0 * h;
    let wedge_distance = move |z: Complex64| {
        let ray = |dir: Complex64| {
            let t = (z.re * dir.re + z.im * dir.im).max(0.0);
            (z - dir * t).norm()
        };
        ray(Complex64::new(1.0, 0.0)).min(ray(Complex64::from_polar(1.0, theta)))
    };
    let grid = GridSample::cartesian(Complex64::new(-1.0, -1.0), h, n, n, |z| {
        if z.norm() < 0.25 || crescents::arg_0_2pi(z) > theta {
            return None;
        }
        s.apply(z).ok()
    })?
    .mask_where(|z| wedge_distance(z) < edge);
    scaling_report(s, grid)
}

/// [`verify_scaling_dilatation`] with `w = i(t − t₀)/t₀`, also reporting `L_t`.
pub fn verify_scaling_parameter(t: Complex64, t0: Complex64, theta: f64, n: usize) -> Result<ScalingReport, QcError> {
    let mut r = verify_scaling_dilatation(crescents::scaling_parameter(t, t0), theta, n)?;
    r.l_t = Some(crescents::quasiregular_constant(t, t0));
    Ok(r)
}

/// Radial power map `r e^{iθ} ↦ r^α e^{iθ}`, which sends `Ω(s)` onto `Ω(αs)`.
pub fn radial_power(alpha: f64) -> impl Fn(Complex64) -> Complex64 + Sync + Copy {
    move |z: Complex64| {
        let r = z.norm();
        if r == 0.0 {
            z
        } else {
            z * r.powf(alpha - 1.0)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnnulusExtremalReport {
    pub s: f64,
    pub alpha: f64,
    pub estimated_sup: f64,
    /// `max(α, 1/α)`.
    pub expected: f64,
    pub image_modulus: f64,
    /// `K(s)`, the least dilatation of a map onto an annulus of modulus `sinh(s/2)/2`.
    pub k_s: f64,
    /// Whether this power map reaches the dome's modulus.
    pub reaches_dome_modulus: bool,
}

/// Estimates the dilatation of the power map `Ω(s) → Ω(αs)` on a log-polar grid with `n`
/// samples around the circle.
pub fn annulus_extremal_check(s: f64, alpha: f64, n: usize) -> Result<AnnulusExtremalReport, QcError> {
    if !(s > 0.0 && alpha > 0.0) {
        return Err(QcError::DegenerateGrid);
    }
    let f = radial_power(alpha);
    let grid = GridSample::annular_sector(1.0, s.exp(), 0.0, std::f64::consts::TAU, n, |z| Some(f(z)))?;
    let stats = dilatation_stats(&beltrami_estimate(&grid))?;
    let image_modulus = alpha * s / std::f64::consts::TAU;
    let dome_modulus = (s / 2.0).sinh() / 2.0;
    Ok(AnnulusExtremalReport {
        s,
        alpha,
        estimated_sup: stats.sup,
        expected: alpha.max(1.0 / alpha),
        image_modulus,
        k_s: std::f64::consts::PI * (s / 2.0).sinh() / s,
        reaches_dome_modulus: image_modulus >= dome_modulus * (1.0 - 1e-12),
    })
}

/// Named maps for the command line.
pub const FIXTURES: [&str; 6] = ["identity", "affine", "conjugation", "mobius", "power", "scaling"];

/// Samples a named fixture on an `n × n` grid.
pub fn fixture(name: &str, n: usize) -> Option<Result<GridSample, QcError>> {
    let square = |f: fn(Complex64) -> Complex64| {
        GridSample::cartesian(Complex64::new(-1.0, -1.0), 2.0 / (n.max(2) - 1) as f64, n, n, move |z| Some(f(z)))
    };
    Some(match name {
        "identity" => square(|z| z),
        "affine" => square(|z| Complex64::new(2.0 * z.re, z.im)),
        "conjugation" => square(|z| z.conj()),
        "mobius" => square(|z| (z + 0.5) / (Complex64::new(0.3, 0.2) * z + 3.0)),
        "power" => GridSample::annular_sector(1.0, 1f64.exp(), 0.0, std::f64::consts::TAU, n, |z| Some(radial_power(2.0)(z))),
        "scaling" => {
            let s = AngleScaling::new(Complex64::new(0.0, 2.0), std::f64::consts::FRAC_PI_2).expect("valid angle");
            GridSample::annular_sector(0.5, 2.0, 0.0, std::f64::consts::FRAC_PI_2, n, move |z| s.apply(z).ok())
        }
        _ => return None,
    })
}
