use std::ops::Range;

use rand::seq::SliceRandom;
use rand::Rng;

use super::FiniteLamination;
use crate::hyperbolic::GeodesicH2;

/// A uniformly random non-crossing perfect matching of `0..2n` (points in cyclic order).
pub fn random_noncrossing_matching<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
    // Cycle lemma: among the rotations of a shuffled word with n ups and n + 1 downs exactly
    // one has all proper prefix sums nonnegative; dropping its last down leaves a Dyck word.
    let mut word: Vec<i32> = std::iter::repeat(1).take(n).chain(std::iter::repeat(-1).take(n + 1)).collect();
    word.shuffle(rng);
    let mut sum = 0;
    let (mut min, mut argmin) = (0, 0);
    for (i, &s) in word.iter().enumerate() {
        sum += s;
        if sum < min {
            min = sum;
            argmin = i + 1;
        }
    }
    let len = word.len();
    word.rotate_left(argmin % len);
    word.pop();
    let mut stack = Vec::new();
    let mut pairs = Vec::with_capacity(n);
    for (i, &s) in word.iter().enumerate() {
        if s == 1 {
            stack.push(i);
        } else {
            pairs.push((stack.pop().expect("Dyck word"), i));
        }
    }
    pairs
}

/// A random lamination with `n` pairwise disjoint leaves and weights drawn from `weights`.
pub fn random_lamination<R: Rng + ?Sized>(rng: &mut R, n: usize, weights: Range<f64>) -> FiniteLamination {
    let tau = std::f64::consts::TAU;
    let mut angles: Vec<f64> = (0..2 * n).map(|_| rng.gen_range(0.0..tau)).collect();
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // Keep endpoints well separated so leaves stay distinct under rounding.
    for i in 1..angles.len() {
        if angles[i] - angles[i - 1] < 1e-6 {
            return random_lamination(rng, n, weights);
        }
    }
    let leaves = random_noncrossing_matching(rng, n)
        .into_iter()
        .map(|(i, j)| GeodesicH2::from_angles(angles[i], angles[j]).expect("distinct angles"))
        .collect();
    let w = (0..n).map(|_| rng.gen_range(weights.clone())).collect();
    FiniteLamination::new(leaves, w).expect("disjoint by construction")
}
