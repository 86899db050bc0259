//! Pleated planes, earthquakes and complex earthquakes along finite laminations.
//!
//! Both constructions fix a base gap and move every other gap `g` by the product
//! `X₁ ∘ X₂ ∘ … ∘ X_k` of elementary isometries along the leaves `ℓ₁, …, ℓ_k` separating the
//! base from `g`, with `ℓ₁` next to the base. Each `X_i` is taken about the original leaf;
//! composing in this order is the same as moving about the already-moved leaves one at a
//! time.
//!
//! The base plane is the hemisphere over the unit circle, so the disk model of H² sits in
//! H³ via [`PointH2::to_hemisphere`].
//!
//! Conventions:
//! * bending folds the far side of a leaf down into the half-ball under the base hemisphere
//!   when the weight is positive, so the exterior dihedral angle along a leaf equals its
//!   weight;
//! * earthquakes shear to the left: standing on a leaf and facing the gap being moved, that
//!   gap slides to the left.

mod earthquake;
mod t0;

pub use earthquake::{BoundaryMap, ComplexEarthquake, EarthquakeMap, TraceRow};
pub use t0::{f_bound, in_t0, T0Region, C2_DEFAULT, C2_REMARK};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::hyperbolic::{dist_h2, dist_h3, in_open_arc, Circle, ExtComplex, MobiusMap, PlaneH3, PointH2, PointH3};
use crate::laminations::{FiniteLamination, GapId, Gaps, LaminationError};

/// Elementary isometry about leaf `k` moving the gap on the given side.
pub(crate) fn leaf_isometry(
    lam: &FiniteLamination,
    k: usize,
    far_positive: bool,
    amount: f64,
    kind: fn(ExtComplex, ExtComplex, f64) -> Result<MobiusMap, crate::hyperbolic::GeometryError>,
) -> MobiusMap {
    let (a, b) = lam.leaves()[k].endpoint_complex();
    let (p, q) = if far_positive { (a, b) } else { (b, a) };
    kind(p.into(), q.into(), amount).expect("leaf endpoints are distinct")
}

/// Per-gap products of elementary isometries, built along the dual tree.
pub(crate) fn gap_products(
    lam: &FiniteLamination,
    gaps: &Gaps,
    base: GapId,
    elementary: impl Fn(usize, bool) -> MobiusMap,
) -> Vec<MobiusMap> {
    let parents = gaps.tree_from(base);
    let mut maps = vec![None; gaps.len()];
    maps[base] = Some(MobiusMap::identity());
    // BFS order guarantees parents are finished first; repeat until filled.
    let mut order: Vec<GapId> = vec![base];
    let mut i = 0;
    while i < order.len() {
        let g = order[i];
        for (h, p) in parents.iter().enumerate() {
            if let Some((parent, _)) = p {
                if *parent == g {
                    order.push(h);
                }
            }
        }
        i += 1;
    }
    for &g in order.iter().skip(1) {
        let (parent, k) = parents[g].expect("tree");
        let far_positive = gaps.on_positive_side(g, k);
        let m = maps[parent].expect("parent first").compose(&elementary(k, far_positive));
        maps[g] = Some(m);
    }
    let _ = lam;
    maps.into_iter().map(|m| m.expect("every gap reached")).collect()
}

/// The gap whose closure contains the boundary point at `angle`.
pub(crate) fn boundary_gap(lam: &FiniteLamination, gaps: &Gaps, angle: f64) -> GapId {
    if lam.is_empty() {
        return 0;
    }
    let z = Complex64::from_polar(1.0, angle);
    // Boundary points lie in the closure of one gap; decide sides combinatorially.
    let sides: Vec<bool> = lam
        .leaves()
        .iter()
        .map(|l| {
            let (a, b) = l.endpoints();
            in_open_arc(a.angle(), b.angle(), crate::hyperbolic::BoundaryPointH2::new(angle).angle())
        })
        .collect();
    (0..gaps.len())
        .find(|&g| (0..lam.len()).all(|k| gaps.on_positive_side(g, k) == sides[k]))
        .unwrap_or_else(|| gaps.gap_of(lam, z * (1.0 - 1e-9)))
}

/// Result of sampling the distortion of a pleated plane.
#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingReport {
    pub pairs: usize,
    /// Smallest ratio `d_H³(P(p), P(q)) / d_H²(p, q)` seen.
    pub min_ratio: f64,
    /// Largest ratio seen; at most 1 up to rounding, since bending does not stretch.
    pub max_ratio: f64,
    /// Pairs with distinct sources whose images (nearly) coincide.
    pub collisions: usize,
}

/// The convex pleated plane obtained by bending H² along a finite lamination.
#[derive(Clone, Debug)]
pub struct PleatedPlane {
    lamination: FiniteLamination,
    gaps: Gaps,
    base: GapId,
    factor: f64,
    isometries: Vec<MobiusMap>,
}

impl PleatedPlane {
    pub fn new(lam: &FiniteLamination, base: GapId) -> Result<Self, LaminationError> {
        Self::with_factor(lam, base, 1.0)
    }

    /// Bends by `factor` times each weight; negative factors fold the other way.
    pub fn with_factor(lam: &FiniteLamination, base: GapId, factor: f64) -> Result<Self, LaminationError> {
        let gaps = Gaps::new(lam);
        gaps.check(base)?;
        let isometries = gap_products(lam, &gaps, base, |k, far_positive| {
            leaf_isometry(lam, k, far_positive, factor * lam.weights()[k], MobiusMap::elliptic)
        });
        Ok(PleatedPlane { lamination: lam.clone(), gaps, base, factor, isometries })
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

    pub fn gap_isometry(&self, g: GapId) -> MobiusMap {
        self.isometries[g]
    }

    /// Image of the base hemisphere under the isometry of gap `g`.
    pub fn gap_plane(&self, g: GapId) -> PlaneH3 {
        PlaneH3::unit_hemisphere().transform(&self.isometries[g])
    }

    /// The isometry carrying the near side of leaf `k` (towards the base) onto its far side.
    pub fn relative_isometry(&self, k: usize) -> MobiusMap {
        let (near, far) = self.near_far(k);
        // Rotation about the image of the leaf under the near gap's isometry.
        let (a, b) = self.lamination.leaves()[k].endpoint_complex();
        let (p, q) = if self.gaps.on_positive_side(far, k) { (a, b) } else { (b, a) };
        let m = self.isometries[near];
        MobiusMap::elliptic(m.apply_finite(p), m.apply_finite(q), self.factor * self.lamination.weights()[k])
            .expect("isometries keep leaf endpoints apart")
    }

    /// Angle between the normals of the two faces along leaf `k`, measured after moving the
    /// near face back to the base hemisphere (which keeps the computation well conditioned).
    pub fn exterior_angle(&self, k: usize) -> f64 {
        let (near, far) = self.near_far(k);
        let back = self.isometries[near].inverse();
        let far_plane = PlaneH3::unit_hemisphere().transform(&back.compose(&self.isometries[far]));
        PlaneH3::unit_hemisphere().normal_angle(&far_plane)
    }

    fn near_far(&self, k: usize) -> (GapId, GapId) {
        let (g0, g1) = self.gaps.across(k);
        if self.gaps.path(self.base, g0).map(|p| p.contains(&k)).unwrap_or(false) {
            (g1, g0)
        } else {
            (g0, g1)
        }
    }

    pub fn apply(&self, p: &PointH2) -> PointH3 {
        let g = self.gaps.gap_of(&self.lamination, p.z());
        self.isometries[g].extend(&p.to_hemisphere())
    }

    /// Image of the boundary point at `angle`.
    pub fn apply_boundary(&self, angle: f64) -> ExtComplex {
        let g = boundary_gap(&self.lamination, &self.gaps, angle);
        self.isometries[g].apply_finite(Complex64::from_polar(1.0, angle))
    }

    /// Samples point pairs in the hyperbolic disk of radius `radius` and reports the
    /// distortion of distances.
    pub fn embedding_check(&self, samples: usize, radius: f64, seed: u64) -> EmbeddingReport {
        let chunk = 2048;
        let chunks = samples.div_ceil(chunk);
        let parts: Vec<(f64, f64, usize, usize)> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(c as u64).wrapping_mul(0x2545_F491_4F6C_DD1D));
                let (mut lo, mut hi, mut coll, mut n) = (f64::INFINITY, 0.0f64, 0, 0);
                for _ in 0..chunk.min(samples - c * chunk) {
                    let p = random_point(&mut rng, radius);
                    // Partner at a log-uniform distance so that short pairs across leaves occur.
                    let d = (rng.gen_range((1e-3f64).ln()..(2.0 * radius).ln())).exp();
                    let dir = rng.gen_range(0.0..std::f64::consts::TAU);
                    let Ok(arc) = crate::laminations::GeodesicArc::from_point_direction(p, dir, d) else { continue };
                    let q = arc.endpoints().1;
                    let d2 = dist_h2(&p, &q);
                    if d2 < 1e-6 {
                        continue;
                    }
                    let d3 = dist_h3(&self.apply(&p), &self.apply(&q));
                    if d3 < 1e-9 {
                        coll += 1;
                    }
                    let r = d3 / d2;
                    lo = lo.min(r);
                    hi = hi.max(r);
                    n += 1;
                }
                (lo, hi, coll, n)
            })
            .collect();
        let mut report = EmbeddingReport { pairs: 0, min_ratio: f64::INFINITY, max_ratio: 0.0, collisions: 0 };
        for (lo, hi, coll, n) in parts {
            report.min_ratio = report.min_ratio.min(lo);
            report.max_ratio = report.max_ratio.max(hi);
            report.collisions += coll;
            report.pairs += n;
        }
        report
    }

    /// Face list: for each gap, the boundary circle of its supporting plane.
    pub fn faces_json(&self) -> serde_json::Value {
        let faces: Vec<serde_json::Value> = (0..self.gaps.len())
            .map(|g| {
                let c: Circle = self.gap_plane(g).boundary;
                let leaves: Vec<usize> = (0..self.lamination.len())
                    .filter(|&k| {
                        let (a, b) = self.gaps.across(k);
                        a == g || b == g
                    })
                    .collect();
                serde_json::json!({
                    "gap": g,
                    "circle": {"a": c.a, "b": [c.b.re, c.b.im], "c": c.c},
                    "leaves": leaves,
                })
            })
            .collect();
        serde_json::json!({ "base": self.base, "factor": self.factor, "faces": faces })
    }
}

/// A point uniformly distributed (in hyperbolic area) in the disk of radius `radius`.
pub(crate) fn random_point<R: Rng>(rng: &mut R, radius: f64) -> PointH2 {
    let u: f64 = rng.gen();
    let rho = (1.0 + u * (radius.cosh() - 1.0)).acosh();
    let z = Complex64::from_polar((rho / 2.0).tanh(), rng.gen_range(0.0..std::f64::consts::TAU));
    PointH2::new(z).unwrap_or_else(|_| PointH2::origin())
}
