mod common;

use std::f64::consts::TAU;

use proptest::prelude::*;
use rand::Rng;

use common::{disk_automorphism, h2, lamination, rng};
use domekit::hyperbolic::GeodesicH2;
use domekit::laminations::{FiniteLamination, GeodesicArc, LaminationError};

proptest! {
    #[test]
    fn roundness_scales_linearly(lam in lamination(12, 0.05..3.0), c in 0.01..50.0f64) {
        let r = lam.roundness().unwrap();
        let scaled = lam.scale(c).unwrap().roundness().unwrap();
        // Same chains, literally scaled weights; only the summation rounds differently.
        prop_assert!((scaled - c * r).abs() <= 8.0 * f64::EPSILON * scaled);
    }

    #[test]
    fn roundness_is_mobius_invariant(lam in lamination(10, 0.05..2.0), m in disk_automorphism()) {
        let moved = lam.transform(&m).unwrap();
        prop_assert!((moved.roundness().unwrap() - lam.roundness().unwrap()).abs() <= 1e-9);
    }

    #[test]
    fn validate_matches_the_interleaving_oracle(seed in any::<u64>(), n in 1usize..8) {
        let mut r = rng(seed);
        let pairs: Vec<(f64, f64)> = (0..n).map(|_| (r.gen_range(0.0..TAU), r.gen_range(0.0..TAU))).collect();
        prop_assume!(pairs.iter().all(|(a, b)| (a - b).abs() > 1e-3));
        let leaves: Vec<GeodesicH2> = pairs.iter().map(|&(a, b)| GeodesicH2::from_angles(a, b).unwrap()).collect();
        let lam = FiniteLamination::new_unchecked(leaves, vec![1.0; n]);
        let crossing = (0..n).any(|i| (i + 1..n).any(|j| {
            let ((a, b), (c, d)) = (pairs[i], pairs[j]);
            let inside = |x: f64| a.min(b) < x && x < a.max(b);
            inside(c) != inside(d)
        }));
        match lam.validate() {
            Ok(()) => prop_assert!(!crossing),
            Err(LaminationError::CrossingLeaves(..)) => prop_assert!(crossing),
            Err(e) => prop_assert!(false, "unexpected {e:?}"),
        }
    }

    #[test]
    fn transverse_measure_counts_sign_changes(lam in lamination(10, 0.1..2.0), p in h2(0.9), dir in 0.0..TAU, len in 0.2..3.0f64) {
        let arc = GeodesicArc::from_point_direction(p, dir, len).unwrap();
        let Ok(m) = lam.transverse_measure(&arc) else { return Ok(()) };
        // Walk the arc and add the weight of every leaf whose side changes.
        let steps = 2000;
        let mut oracle = 0.0;
        for (leaf, w) in lam.leaves().iter().zip(lam.weights()) {
            let mut last = leaf.side(arc.point_at(0.0).z()) > 0.0;
            let mut flips = 0;
            for k in 1..=steps {
                let now = leaf.side(arc.point_at(k as f64 / steps as f64).z()) > 0.0;
                flips += usize::from(now != last);
                last = now;
            }
            if flips % 2 == 1 {
                oracle += w;
            }
        }
        prop_assert!((m - oracle).abs() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    /// 50 laminations × 2000 arcs: 10⁵ unit arcs never see more than the exact roundness.
    #[test]
    fn unit_arcs_stay_below_roundness(lam in lamination(12, 0.05..2.0), seed in any::<u64>()) {
        let exact = lam.roundness().unwrap();
        let mut r = rng(seed);
        for _ in 0..2000 {
            let z = num_complex::Complex64::from_polar(r.gen_range(0.0..0.97), r.gen_range(0.0..TAU));
            let p = domekit::hyperbolic::PointH2::new(z).unwrap();
            let arc = GeodesicArc::from_point_direction(p, r.gen_range(0.0..TAU), 1.0).unwrap();
            if let Ok(m) = lam.transverse_measure(&arc) {
                prop_assert!(m <= exact + 1e-9);
            }
        }
    }
}

#[test]
fn pushforward_by_identity_and_mobius() {
    let mut r = rng(11);
    let lam = domekit::laminations::random_lamination(&mut r, 8, 0.1..1.0);
    let same = lam.pushforward(&domekit::laminations::IdentityCircleMap).unwrap();
    assert_eq!(same, lam);
    let m = domekit::hyperbolic::MobiusMap::disk_automorphism(0.7, num_complex::Complex64::new(0.3, -0.2)).unwrap();
    let pushed = lam.pushforward(&m).unwrap();
    let moved = lam.transform(&m).unwrap();
    for (a, b) in pushed.leaves().iter().zip(moved.leaves()) {
        let ((a0, a1), (b0, b1)) = (a.endpoints(), b.endpoints());
        let same_ends = a0.separation(&b0) + a1.separation(&b1) < 1e-12 || a0.separation(&b1) + a1.separation(&b0) < 1e-12;
        assert!(same_ends);
    }
    assert_eq!(pushed.weights(), lam.weights());
}
