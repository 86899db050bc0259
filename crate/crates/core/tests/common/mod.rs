#![allow(dead_code)]

use std::f64::consts::TAU;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use domekit::hyperbolic::{MobiusMap, PointH2, PointH3};
use domekit::laminations::{random_lamination, FiniteLamination};

pub fn complex(scale: f64) -> impl Strategy<Value = Complex64> {
    (-scale..scale, -scale..scale).prop_map(|(x, y)| Complex64::new(x, y))
}

/// Möbius maps whose normalized matrices stay moderately sized.
pub fn mobius() -> impl Strategy<Value = MobiusMap> {
    (complex(2.0), complex(2.0), complex(2.0), complex(2.0))
        .prop_filter_map("singular or badly conditioned", |(a, b, c, d)| {
            let m = MobiusMap::new(a, b, c, d).ok()?;
            (m.a.norm() + m.b.norm() + m.c.norm() + m.d.norm() < 8.0).then_some(m)
        })
}

pub fn disk_automorphism() -> impl Strategy<Value = MobiusMap> {
    (0.0..TAU, 0.0..0.9f64, 0.0..TAU)
        .prop_map(|(phi, r, t)| MobiusMap::disk_automorphism(phi, Complex64::from_polar(r, t)).unwrap())
}

pub fn h2(max_radius: f64) -> impl Strategy<Value = PointH2> {
    (0.0..max_radius, 0.0..TAU).prop_map(|(r, t)| PointH2::new(Complex64::from_polar(r, t)).unwrap())
}

pub fn h3() -> impl Strategy<Value = PointH3> {
    (-2.0..2.0, -2.0..2.0, 0.05..3.0f64).prop_map(|(x, y, t)| PointH3::new(x, y, t).unwrap())
}

/// A random lamination with `1..=max_leaves` leaves, built from a seed.
pub fn lamination(max_leaves: usize, weights: std::ops::Range<f64>) -> impl Strategy<Value = FiniteLamination> {
    (any::<u64>(), 1..=max_leaves).prop_map(move |(seed, n)| {
        random_lamination(&mut ChaCha8Rng::seed_from_u64(seed), n, weights.clone())
    })
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
