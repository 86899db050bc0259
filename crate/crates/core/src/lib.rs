//! Domes of planar domains, the laminations that bend them, and explicit bounds on how far the
//! nearest point retraction is from conformal.
//!
//! The modules build on each other in this order:
//!
//! * [`hyperbolic`]: Möbius maps, circles, and points and geodesics of H² and H³;
//! * [`laminations`]: finite measured laminations and their roundness;
//! * [`pleating`]: pleated planes, earthquakes and complex earthquakes;
//! * [`crescents`]: crescents and complex angle scalings;
//! * [`dome`]: hulls of finitely punctured spheres, the retraction, intrinsic geometry;
//! * [`bounds`]: the explicit constants as functions of the injectivity radius;
//! * [`annulus`]: the round annulus, where all of the above is in closed form;
//! * [`qc`]: grid estimates of Beltrami coefficients.
//!
//! ```
//! use domekit::annulus::verify_bounds;
//!
//! let report = verify_bounds(30.0).unwrap();
//! assert!(report.all_hold());
//! ```
//!
//! The guide in `book/` walks through each module with runnable examples.

pub mod hyperbolic;
pub mod laminations;
pub mod pleating;
pub mod crescents;
pub mod bounds;
pub mod dome;
pub mod annulus;
pub mod qc;

// The guide's code blocks run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/hyperbolic.md")]
    mod hyperbolic {}
    #[doc = include_str!("../../../book/src/laminations.md")]
    mod laminations {}
    #[doc = include_str!("../../../book/src/pleating.md")]
    mod pleating {}
    #[doc = include_str!("../../../book/src/crescents.md")]
    mod crescents {}
    #[doc = include_str!("../../../book/src/domes.md")]
    mod domes {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/annulus.md")]
    mod annulus {}
    #[doc = include_str!("../../../book/src/quasiconformal.md")]
    mod quasiconformal {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
