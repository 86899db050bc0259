use num_complex::Complex64;
use serde::Serialize;

use super::{boundary_gap, gap_products, leaf_isometry, PleatedPlane};
use crate::hyperbolic::{ExtComplex, MobiusMap, PointH2, PointH3};
use crate::laminations::{CircleMap, FiniteLamination, GapId, Gaps, LaminationError};

/// A left earthquake along a finite lamination, as one disk automorphism per gap.
#[derive(Clone, Debug)]
pub struct EarthquakeMap {
    lamination: FiniteLamination,
    gaps: Gaps,
    base: GapId,
    factor: f64,
    maps: Vec<MobiusMap>,
}

impl EarthquakeMap {
    pub fn new(lam: &FiniteLamination, base: GapId) -> Result<Self, LaminationError> {
        Self::with_factor(lam, base, 1.0)
    }

    /// Shears by `factor` times each weight; a negative factor gives the right earthquake.
    pub fn with_factor(lam: &FiniteLamination, base: GapId, factor: f64) -> Result<Self, LaminationError> {
        let gaps = Gaps::new(lam);
        gaps.check(base)?;
        let maps = gap_products(lam, &gaps, base, |k, far_positive| {
            leaf_isometry(lam, k, far_positive, factor * lam.weights()[k], MobiusMap::hyperbolic)
        });
        Ok(EarthquakeMap { lamination: lam.clone(), gaps, base, factor, maps })
    }

    pub fn lamination(&self) -> &FiniteLamination {
        &self.lamination
    }

    pub fn gaps(&self) -> &Gaps {
        &self.gaps
    }

    pub fn base(&self) -> GapId {
        self.base
    }

    pub fn factor(&self) -> f64 {
        self.factor
    }

    pub fn gap_map(&self, g: GapId) -> MobiusMap {
        self.maps[g]
    }

    pub fn apply(&self, p: &PointH2) -> PointH2 {
        let g = self.gaps.gap_of(&self.lamination, p.z());
        p.moved_by(&self.maps[g]).unwrap_or(*p)
    }

    /// The extension to the circle: a piecewise Möbius homeomorphism.
    pub fn boundary_map(&self) -> BoundaryMap {
        let mut breaks: Vec<f64> = self
            .lamination
            .leaves()
            .iter()
            .flat_map(|l| [l.endpoints().0.angle(), l.endpoints().1.angle()])
            .collect();
        breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
        breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        let tau = std::f64::consts::TAU;
        let pieces = if breaks.is_empty() {
            vec![self.maps[0]]
        } else {
            (0..breaks.len())
                .map(|i| {
                    let lo = breaks[i];
                    let hi = if i + 1 < breaks.len() { breaks[i + 1] } else { breaks[0] + tau };
                    let g = boundary_gap(&self.lamination, &self.gaps, (lo + hi) / 2.0);
                    self.maps[g]
                })
                .collect()
        };
        BoundaryMap { breaks, pieces }
    }

    /// Image of the lamination `λ` under the boundary map, with the gap of `λ` containing
    /// the image of gap `g` of the underlying lamination.
    pub fn push_lamination(&self, lam: &FiniteLamination) -> Result<FiniteLamination, LaminationError> {
        lam.pushforward(&self.boundary_map())
    }
}

/// A circle homeomorphism that is Möbius on each arc between consecutive breakpoints.
#[derive(Clone, Debug)]
pub struct BoundaryMap {
    /// Sorted breakpoints in `[0, 2π)`.
    breaks: Vec<f64>,
    /// `pieces[i]` acts on the arc from `breaks[i]` to the next breakpoint.
    pieces: Vec<MobiusMap>,
}

impl BoundaryMap {
    pub fn breakpoints(&self) -> &[f64] {
        &self.breaks
    }

    fn piece(&self, angle: f64) -> usize {
        if self.breaks.len() <= 1 {
            return 0;
        }
        let a = angle.rem_euclid(std::f64::consts::TAU);
        match self.breaks.iter().rposition(|&b| b <= a) {
            Some(i) => i,
            None => self.breaks.len() - 1,
        }
    }

    /// Value at `angle` computed from the piece on each side; they agree at breakpoints.
    pub fn one_sided(&self, angle: f64, eps: f64) -> (f64, f64) {
        (self.map_angle(angle - eps), self.map_angle(angle + eps))
    }
}

impl CircleMap for BoundaryMap {
    fn map_angle(&self, angle: f64) -> f64 {
        let m = &self.pieces[self.piece(angle)];
        m.map_angle(angle)
    }
}

impl CircleMap for EarthquakeMap {
    fn map_angle(&self, angle: f64) -> f64 {
        let g = boundary_gap(&self.lamination, &self.gaps, angle);
        self.maps[g].map_angle(angle)
    }
}

/// One row of a boundary trace: an input angle and its image on the Riemann sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceRow {
    pub angle: f64,
    /// `None` when the image is `∞`.
    pub image: Option<[f64; 2]>,
}

/// `CE_z = P_{y·E_{xμ}(μ)} ∘ E_{xμ}` for `z = x + iy`.
#[derive(Clone, Debug)]
pub struct ComplexEarthquake {
    z: Complex64,
    earthquake: EarthquakeMap,
    bending: PleatedPlane,
}

impl ComplexEarthquake {
    pub fn new(mu: &FiniteLamination, base: GapId, z: Complex64) -> Result<Self, LaminationError> {
        let earthquake = EarthquakeMap::with_factor(mu, base, z.re)?;
        let lambda = earthquake.push_lamination(mu)?;
        // The leaves of λ are the images of those of μ in the same order, but canonical
        // endpoint order may flip, which flips the side labels.
        let lambda_gaps = Gaps::new(&lambda);
        let mu_gaps = earthquake.gaps();
        let flips: Vec<bool> = (0..mu.len())
            .map(|k| {
                let (a, _) = mu.leaves()[k].endpoints();
                let image_a = earthquake.boundary_map().map_point(a);
                lambda.leaves()[k].endpoints().0.separation(&image_a) > 1e-9
            })
            .collect();
        let lambda_base = (0..lambda_gaps.len())
            .find(|&h| (0..mu.len()).all(|k| lambda_gaps.on_positive_side(h, k) == (mu_gaps.on_positive_side(base, k) ^ flips[k])))
            .ok_or(LaminationError::UnknownGap(base))?;
        let bending = PleatedPlane::with_factor(&lambda, lambda_base, z.im)?;
        Ok(ComplexEarthquake { z, earthquake, bending })
    }

    pub fn parameter(&self) -> Complex64 {
        self.z
    }

    pub fn earthquake(&self) -> &EarthquakeMap {
        &self.earthquake
    }

    pub fn bending(&self) -> &PleatedPlane {
        &self.bending
    }

    pub fn apply(&self, p: &PointH2) -> PointH3 {
        self.bending.apply(&self.earthquake.apply(p))
    }

    pub fn apply_boundary(&self, angle: f64) -> ExtComplex {
        let a = self.earthquake.map_angle(angle);
        self.bending.apply_boundary(a)
    }

    /// Images of `n` equally spaced boundary angles.
    pub fn trace(&self, n: usize) -> Vec<TraceRow> {
        (0..n)
            .map(|i| {
                let angle = std::f64::consts::TAU * i as f64 / n as f64;
                let image = self.apply_boundary(angle).finite().map(|w| [w.re, w.im]);
                TraceRow { angle, image }
            })
            .collect()
    }
}
