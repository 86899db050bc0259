use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{FiniteLamination, GeodesicArc, LaminationError, MAX_LEAVES};
use crate::hyperbolic::{geodesic_distance, PointH2};

/// A chain of leaves realizing the roundness.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundnessWitness {
    pub value: f64,
    /// The outermost leaves of the chain (equal for a single leaf).
    pub ends: (usize, usize),
    /// All leaves of the chain.
    pub leaves: Vec<usize>,
}

impl FiniteLamination {
    /// `sup μ(C)` over open geodesic arcs `C` of unit length.
    ///
    /// The leaves crossed by a segment are exactly those separating its two outermost
    /// crossed leaves, and a segment shorter than 1 crossing leaves `i` and `j` exists iff
    /// their common perpendicular is shorter than 1.
    pub fn roundness(&self) -> Result<f64, LaminationError> {
        Ok(self.roundness_witness()?.map_or(0.0, |w| w.value))
    }

    pub fn roundness_witness(&self) -> Result<Option<RoundnessWitness>, LaminationError> {
        let n = self.len();
        if n > MAX_LEAVES {
            return Err(LaminationError::TooManyLeaves(n));
        }
        let mut best: Option<RoundnessWitness> = None;
        let mut consider = |value: f64, i: usize, j: usize, chain: Vec<usize>| {
            if best.as_ref().map_or(true, |b| value > b.value) {
                best = Some(RoundnessWitness { value, ends: (i, j), leaves: chain });
            }
        };
        for i in 0..n {
            consider(self.weights[i], i, i, vec![i]);
        }
        for i in 0..n {
            for j in i + 1..n {
                let d = geodesic_distance(&self.leaves[i], &self.leaves[j])?.distance;
                if d >= 1.0 {
                    continue;
                }
                let mut chain = vec![i, j];
                chain.extend((0..n).filter(|&k| self.separates(k, i, j)));
                let value = chain.iter().map(|&k| self.weights[k]).sum();
                consider(value, i, j, chain);
            }
        }
        Ok(best)
    }
}

/// Largest transverse measure found over `samples` random open arcs of unit length.
///
/// Half of the arcs start at uniformly distributed points of a hyperbolic disk of radius
/// `radius` about the origin; the other half start near random points of random leaves.
/// This is a lower estimate of the roundness.
pub fn sampled_roundness(lam: &FiniteLamination, samples: usize, radius: f64, seed: u64) -> f64 {
    let tau = std::f64::consts::TAU;
    let chunk = 4096;
    let chunks = samples.div_ceil(chunk);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (c as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let mut best: f64 = 0.0;
            let count = chunk.min(samples - c * chunk);
            for s in 0..count {
                let start = if s % 2 == 0 || lam.is_empty() {
                    // Uniform in hyperbolic area: P(r < ρ) ∝ cosh ρ − 1.
                    let u: f64 = rng.gen();
                    let rho = (1.0 + u * (radius.cosh() - 1.0)).acosh();
                    Complex64::from_polar((rho / 2.0).tanh(), rng.gen_range(0.0..tau))
                } else {
                    let leaf = &lam.leaves()[rng.gen_range(0..lam.len())];
                    leaf.point_at(rng.gen_range(-radius..radius)).z()
                };
                let Ok(p) = PointH2::new(start) else { continue };
                let dir = rng.gen_range(0.0..tau);
                // Slide the arc back a little so that its start is off the leaf.
                let back = rng.gen_range(0.0..1.0);
                let Ok(arc) = unit_arc(p, dir, back) else { continue };
                if let Ok(m) = lam.transverse_measure(&arc) {
                    best = best.max(m);
                }
            }
            best
        })
        .reduce(|| 0.0, f64::max)
}

/// The unit arc on the geodesic through `p` in direction `dir`, starting `back` behind `p`.
fn unit_arc(p: PointH2, dir: f64, back: f64) -> Result<GeodesicArc, crate::hyperbolic::GeometryError> {
    let u = Complex64::from_polar(1.0, dir);
    let at = |t: f64| {
        let w = u * (t / 2.0).tanh();
        PointH2::new((w + p.z()) / (1.0 + p.z().conj() * w))
    };
    GeodesicArc::new(at(-back)?, at(1.0 - back)?)
}
