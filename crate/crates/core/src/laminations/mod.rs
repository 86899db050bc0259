//! Finite measured geodesic laminations of the disk.

mod arc;
mod gaps;
mod random;
mod roundness;

pub use arc::GeodesicArc;
pub use gaps::{GapId, Gaps};
pub use random::{random_lamination, random_noncrossing_matching};
pub use roundness::{sampled_roundness, RoundnessWitness};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hyperbolic::{interleaved, BoundaryPointH2, ExtComplex, GeodesicH2, GeometryError, MobiusMap, ENDPOINT_TOLERANCE};

/// Largest lamination accepted by [`FiniteLamination::roundness`].
pub const MAX_LEAVES: usize = 64;

/// Points within this hyperbolic distance of a leaf count as lying on it.
pub const ON_LEAF_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum LaminationError {
    #[error("leaves {0} and {1} cross")]
    CrossingLeaves(usize, usize),
    #[error("leaves {0} and {1} coincide")]
    DuplicateLeaf(usize, usize),
    #[error("weight of leaf {0} is not positive")]
    NonpositiveWeight(usize),
    #[error("{leaves} leaves but {weights} weights")]
    LengthMismatch { leaves: usize, weights: usize },
    #[error("arc endpoint lies on leaf {0}")]
    NotTransverse(usize),
    #[error("scale factor must be positive")]
    NonpositiveScale,
    #[error("{0} leaves exceeds the limit of {MAX_LEAVES}")]
    TooManyLeaves(usize),
    #[error("unknown gap {0}")]
    UnknownGap(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("malformed lamination JSON: {0}")]
    Json(String),
}

/// A homeomorphism of the unit circle, acting on angles.
pub trait CircleMap {
    fn map_angle(&self, angle: f64) -> f64;

    fn map_point(&self, p: BoundaryPointH2) -> BoundaryPointH2 {
        BoundaryPointH2::new(self.map_angle(p.angle()))
    }
}

/// Identity map of the circle.
pub struct IdentityCircleMap;

impl CircleMap for IdentityCircleMap {
    fn map_angle(&self, angle: f64) -> f64 {
        angle
    }
}

impl CircleMap for MobiusMap {
    /// Meaningful only for maps preserving the unit circle.
    fn map_angle(&self, angle: f64) -> f64 {
        match self.apply_finite(Complex64::from_polar(1.0, angle)) {
            ExtComplex::Finite(w) => w.arg(),
            ExtComplex::Infinity => f64::NAN,
        }
    }
}

/// Pairwise disjoint weighted geodesics.
///
/// Leaves are stored with endpoint angles in increasing order, so the positive side of a
/// leaf (see [`GeodesicH2::side`]) is the side away from angle 0.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteLamination {
    leaves: Vec<GeodesicH2>,
    weights: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct LaminationJson {
    leaves: Vec<[f64; 2]>,
    weights: Vec<f64>,
}

fn canonical(l: &GeodesicH2) -> GeodesicH2 {
    let (a, b) = l.endpoints();
    if a.angle() <= b.angle() {
        *l
    } else {
        GeodesicH2::new(b, a).expect("endpoints already distinct")
    }
}

impl FiniteLamination {
    /// Builds and validates a lamination.
    pub fn new(leaves: Vec<GeodesicH2>, weights: Vec<f64>) -> Result<Self, LaminationError> {
        let lam = Self::new_unchecked(leaves, weights);
        lam.validate()?;
        Ok(lam)
    }

    /// Builds without checking disjointness or weights; call [`FiniteLamination::validate`].
    pub fn new_unchecked(leaves: Vec<GeodesicH2>, weights: Vec<f64>) -> Self {
        FiniteLamination { leaves: leaves.iter().map(canonical).collect(), weights }
    }

    pub fn empty() -> Self {
        FiniteLamination { leaves: Vec::new(), weights: Vec::new() }
    }

    /// Builds from endpoint angle pairs.
    pub fn from_angles(pairs: &[(f64, f64)], weights: Vec<f64>) -> Result<Self, LaminationError> {
        let leaves = pairs
            .iter()
            .map(|&(a, b)| GeodesicH2::from_angles(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(leaves, weights)
    }

    pub fn leaves(&self) -> &[GeodesicH2] {
        &self.leaves
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
    }

    /// Checks weights and pairwise disjointness.
    pub fn validate(&self) -> Result<(), LaminationError> {
        if self.leaves.len() != self.weights.len() {
            return Err(LaminationError::LengthMismatch { leaves: self.leaves.len(), weights: self.weights.len() });
        }
        for (i, &w) in self.weights.iter().enumerate() {
            if !(w > 0.0) || !w.is_finite() {
                return Err(LaminationError::NonpositiveWeight(i));
            }
        }
        for i in 0..self.leaves.len() {
            for j in i + 1..self.leaves.len() {
                let (a1, b1) = self.leaves[i].endpoints();
                let (a2, b2) = self.leaves[j].endpoints();
                let same = |p: BoundaryPointH2, q: BoundaryPointH2| p.separation(&q) < ENDPOINT_TOLERANCE;
                let shared = same(a1, a2) as u8 + same(a1, b2) as u8 + same(b1, a2) as u8 + same(b1, b2) as u8;
                if shared >= 2 {
                    return Err(LaminationError::DuplicateLeaf(i, j));
                }
                if shared == 0 && interleaved(a1.angle(), b1.angle(), a2.angle(), b2.angle()) {
                    return Err(LaminationError::CrossingLeaves(i, j));
                }
            }
        }
        Ok(())
    }

    /// Sum of the weights of leaves crossed by the open arc.
    pub fn transverse_measure(&self, arc: &GeodesicArc) -> Result<f64, LaminationError> {
        Ok(self.crossed_leaves(arc)?.iter().map(|&i| self.weights[i]).sum())
    }

    /// Indices of the leaves crossed by the open arc.
    pub fn crossed_leaves(&self, arc: &GeodesicArc) -> Result<Vec<usize>, LaminationError> {
        let (p, q) = arc.endpoints();
        let on_leaf = ON_LEAF_TOLERANCE.sinh();
        let mut out = Vec::new();
        for (i, leaf) in self.leaves.iter().enumerate() {
            let (dp, dq) = (leaf.sinh_signed_distance(&p), leaf.sinh_signed_distance(&q));
            if dp.abs() < on_leaf || dq.abs() < on_leaf {
                return Err(LaminationError::NotTransverse(i));
            }
            if (dp > 0.0) != (dq > 0.0) {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Multiplies every weight by `c`.
    pub fn scale(&self, c: f64) -> Result<Self, LaminationError> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(LaminationError::NonpositiveScale);
        }
        Ok(FiniteLamination { leaves: self.leaves.clone(), weights: self.weights.iter().map(|w| w * c).collect() })
    }

    /// Image of the lamination under a circle homeomorphism; weights are kept.
    pub fn pushforward(&self, map: &dyn CircleMap) -> Result<Self, LaminationError> {
        let leaves = self
            .leaves
            .iter()
            .map(|l| {
                let (a, b) = l.endpoints();
                GeodesicH2::new(map.map_point(a), map.map_point(b))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(leaves, self.weights.clone())
    }

    /// Moves all leaves by a disk-preserving Möbius map.
    pub fn transform(&self, m: &MobiusMap) -> Result<Self, LaminationError> {
        self.pushforward(m)
    }

    /// Side of leaf `k` on which leaf `j` lies (`true` for the positive side).
    pub(crate) fn side_of_leaf(&self, j: usize, k: usize) -> bool {
        let (a, b) = self.leaves[k].endpoints();
        let (c, d) = self.leaves[j].endpoints();
        // An endpoint of leaf j that is not shared with leaf k decides the side.
        let free = if c.separation(&a) < ENDPOINT_TOLERANCE || c.separation(&b) < ENDPOINT_TOLERANCE { d } else { c };
        crate::hyperbolic::in_open_arc(a.angle(), b.angle(), free.angle())
    }

    /// Whether leaf `k` separates leaves `i` and `j`.
    pub fn separates(&self, k: usize, i: usize, j: usize) -> bool {
        k != i && k != j && self.side_of_leaf(i, k) != self.side_of_leaf(j, k)
    }

    pub fn to_json(&self) -> String {
        let raw = LaminationJson {
            leaves: self
                .leaves
                .iter()
                .map(|l| {
                    let (a, b) = l.endpoints();
                    [a.angle(), b.angle()]
                })
                .collect(),
            weights: self.weights.clone(),
        };
        serde_json::to_string_pretty(&raw).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, LaminationError> {
        let raw: LaminationJson = serde_json::from_str(s).map_err(|e| LaminationError::Json(e.to_string()))?;
        let pairs: Vec<(f64, f64)> = raw.leaves.iter().map(|p| (p[0], p[1])).collect();
        Self::from_angles(&pairs, raw.weights)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn empty_is_valid() {
        assert!(FiniteLamination::empty().validate().is_ok());
    }

    #[test]
    fn interleaved_leaves_are_rejected() {
        let e = FiniteLamination::from_angles(&[(0.0, PI), (PI / 2.0, 3.0 * PI / 2.0)], vec![1.0, 1.0]);
        assert_eq!(e, Err(LaminationError::CrossingLeaves(0, 1)));
    }

    #[test]
    fn asymptotic_leaves_are_allowed_but_duplicates_are_not() {
        assert!(FiniteLamination::from_angles(&[(0.0, PI), (0.0, PI / 2.0)], vec![1.0, 1.0]).is_ok());
        let e = FiniteLamination::from_angles(&[(0.0, PI), (PI, 0.0)], vec![1.0, 1.0]);
        assert_eq!(e, Err(LaminationError::DuplicateLeaf(0, 1)));
    }

    #[test]
    fn weights_must_be_positive() {
        let e = FiniteLamination::from_angles(&[(0.0, 1.0), (2.0, 3.0)], vec![1.0, 0.0]);
        assert_eq!(e, Err(LaminationError::NonpositiveWeight(1)));
        let e = FiniteLamination::from_angles(&[(0.0, 1.0)], vec![1.0, 2.0]);
        assert!(matches!(e, Err(LaminationError::LengthMismatch { .. })));
    }

    #[test]
    fn json_round_trip() {
        let lam = FiniteLamination::from_angles(&[(0.2, 1.0), (2.0, 5.0)], vec![0.5, 1.5]).unwrap();
        let back = FiniteLamination::from_json(&lam.to_json()).unwrap();
        assert_eq!(lam, back);
        assert!(FiniteLamination::from_json(r#"{"leaves": [[0, 3], [1, 4]], "weights": [1, 1]}"#).is_err());
        assert!(matches!(FiniteLamination::from_json("{"), Err(LaminationError::Json(_))));
    }

    #[test]
    fn separation_is_combinatorial() {
        // Three parallel chords; the middle one separates the outer ones.
        let lam = FiniteLamination::from_angles(&[(-0.3, 0.3), (-1.0, 1.0), (-1.5, 1.5)], vec![1.0; 3]).unwrap();
        assert!(lam.separates(1, 0, 2));
        assert!(!lam.separates(0, 1, 2));
        assert!(!lam.separates(2, 0, 1));
    }

    #[test]
    fn scale_rejects_nonpositive() {
        let lam = FiniteLamination::from_angles(&[(0.0, 1.0)], vec![1.0]).unwrap();
        assert_eq!(lam.scale(0.0), Err(LaminationError::NonpositiveScale));
        assert_eq!(lam.scale(1.0).unwrap(), lam);
    }
}
