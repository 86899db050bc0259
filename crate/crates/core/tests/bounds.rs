use std::f64::consts::{E, PI};

use proptest::prelude::*;

use domekit::annulus::annulus_geometry;
use domekit::bounds::{self, BoundsError};

/// `n` log-spaced points strictly inside `(lo, hi)`.
fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (1..=n).map(|i| (a + (b - a) * i as f64 / (n + 1) as f64).exp()).collect()
}

fn increasing(name: &str, xs: &[f64], f: impl Fn(f64) -> Result<f64, BoundsError>) {
    let ys: Vec<f64> = xs.iter().map(|&x| f(x).unwrap()).collect();
    for (i, w) in ys.windows(2).enumerate() {
        assert!(w[0] < w[1], "{name} not increasing at x = {}: {} then {}", xs[i], w[0], w[1]);
    }
}

fn decreasing(name: &str, xs: &[f64], f: impl Fn(f64) -> Result<f64, BoundsError>) {
    increasing(name, xs, |x| f(x).map(|y| -y));
}

const N: usize = 10_000;

#[test]
fn bounds_are_monotone() {
    let nus = log_grid(1e-2, 50.0, N);
    increasing("f", &log_grid(1e-8, bounds::f_domain_end() - 1e-9, N), bounds::f);
    increasing("f_inverse", &log_grid(1e-8, 10.0, N), bounds::f_inverse);
    increasing("g", &nus, bounds::g);
    decreasing("domain roundness", &nus, |x| Ok(bounds::roundness_bound_domain(x)?.value));
    decreasing("domain roundness, relaxed", &nus, |x| Ok(bounds::roundness_bound_domain(x)?.relaxed));
    decreasing("M", &nus, |x| Ok(bounds::m_bound(x)?.value));
    decreasing("M, relaxed", &nus, |x| Ok(bounds::m_bound(x)?.relaxed));
    decreasing("N", &nus, bounds::n_bound);
    decreasing("dome roundness, relaxed", &nus, |x| Ok(bounds::roundness_bound_dome(x)?.relaxed));
    decreasing("lipschitz", &nus, bounds::lipschitz_bound);
    decreasing("lower bound", &log_grid(1e-2, 0.5, N), bounds::lower_bound_k);
    increasing("image length", &log_grid(1e-2, 1.0, N), bounds::geodesic_image_length_bound);
    decreasing("upper modulus", &nus, |l| Ok(bounds::modulus_bounds(l)?.0));
    decreasing("lower modulus", &nus, |l| Ok(bounds::modulus_bounds(l)?.1));
}

#[test]
fn dome_roundness_is_a_nonincreasing_step() {
    let xs = log_grid(1e-3, 50.0, N);
    let vals: Vec<f64> = xs.iter().map(|&x| bounds::roundness_bound_dome(x).unwrap().value).collect();
    for w in vals.windows(2) {
        assert!(w[1] <= w[0]);
    }
    for v in vals {
        assert_eq!(v, 2.0 * PI * (v / (2.0 * PI)).round());
    }
}

proptest! {
    #[test]
    fn chain_identities(nu in 1e-2..50.0f64, nu_hat in 1e-3..50.0f64) {
        let x = (PI * PI / (2.0 * nu)).exp();
        // The expression tree used by the library.
        prop_assert_eq!(bounds::m_bound(nu).unwrap().value, 6.0 * (8.0 * PI * bounds::exp_m() * x + 2.0 * PI));
        prop_assert_eq!(bounds::n_bound(nu_hat).unwrap(), 6.0 * (4.0 * PI / nu_hat + 2.0 * PI));
        // Independent evaluation orders.
        let em = (bounds::m() + PI * PI / (2.0 * nu)).exp();
        let m2 = 48.0 * PI * em + 12.0 * PI;
        prop_assert!((bounds::m_bound(nu).unwrap().value - m2).abs() <= 1e-12 * m2);
        let n2 = (24.0 * PI + 12.0 * PI * nu_hat) / nu_hat;
        prop_assert!((bounds::n_bound(nu_hat).unwrap() - n2).abs() <= 1e-12 * n2);
    }

    #[test]
    fn relaxations_dominate(nu in 1e-2..50.0f64, nu_hat in 1e-3..50.0f64) {
        let b = bounds::m_bound(nu).unwrap();
        prop_assert!(b.value <= b.relaxed);
        let b = bounds::roundness_bound_domain(nu).unwrap();
        prop_assert!(b.value <= b.relaxed);
        let b = bounds::roundness_bound_dome(nu_hat).unwrap();
        prop_assert!(b.value <= b.relaxed * (1.0 + 1e-12));
    }

    #[test]
    fn g_inverts_f(x in 0.0..1.7f64) {
        prop_assert!((bounds::f_inverse(bounds::f(x).unwrap()).unwrap() - x).abs() <= 1e-10);
    }

    #[test]
    fn g_is_at_least_half_its_argument(y in 1e-9..10.0f64) {
        let gv = bounds::f_inverse(y).unwrap();
        if gv < 1.0 {
            prop_assert!(gv >= y / 2.0 - 1e-12);
        }
    }

    #[test]
    fn annulus_sits_between_the_bounds(s in 0.05..300.0f64) {
        let a = annulus_geometry(s).unwrap();
        let upper = bounds::m_bound(a.nu).unwrap().value.min(bounds::n_bound(a.nu_hat).unwrap());
        prop_assert!(a.k <= upper);
        if a.nu < 0.5 {
            prop_assert!(bounds::lower_bound_k(a.nu).unwrap() <= a.k);
        }
    }

    #[test]
    fn domain_bound_against_the_dome_bound(nu in 1e-2..20.0f64) {
        // ν̂ ≥ g(ν), so the dome bound at g(ν) is the weaker one.
        let via_dome = bounds::roundness_bound_dome(bounds::g(nu).unwrap()).unwrap().relaxed;
        prop_assert!(bounds::roundness_bound_domain(nu).unwrap().value <= via_dome * (1.0 + 1e-12));
    }
}

#[test]
fn out_of_domain_inputs_are_errors() {
    for bad in [0.0, -1.0, f64::NAN, f64::INFINITY] {
        assert!(bounds::g(bad).is_err());
        assert!(bounds::m_bound(bad).is_err());
        assert!(bounds::n_bound(bad).is_err());
        assert!(bounds::lipschitz_bound(bad).is_err());
        assert!(bounds::modulus_bounds(bad).is_err());
    }
    assert!(bounds::lower_bound_k(0.5).is_err());
    assert!(bounds::f(bounds::f_domain_end()).is_err());
    assert!(bounds::f(-1e-300).is_err());
    assert!((bounds::exp_m() - bounds::m().exp()).abs() <= 1e-12 * bounds::exp_m());
    assert!((bounds::m().cosh() - E * E).abs() <= 1e-12);
}
