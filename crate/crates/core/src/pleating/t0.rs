use num_complex::Complex64;

/// Default embedding threshold for the roundness of a bending lamination.
pub const C2_DEFAULT: f64 = 0.73;
/// The sharper threshold available from a finer estimate.
pub const C2_REMARK: f64 = 0.948;

/// `f(L, x) = min(sinh⁻¹(e^{|x|} sinh L), e^{|x|/2} sinh L)`.
pub fn f_bound(l: f64, x: f64) -> f64 {
    let a = x.abs();
    (a.exp() * l.sinh()).asinh().min((a / 2.0).exp() * l.sinh())
}

/// Ceiling that ignores rounding just above an integer (`sinh⁻¹(sinh 1)` may exceed 1).
fn tolerant_ceil(v: f64) -> f64 {
    (v - 1e-12).ceil().max(1.0)
}

/// The region `{x + iy : |y| < c₂ / ⌈f(1, x)⌉}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct T0Region {
    pub c2: f64,
}

impl Default for T0Region {
    fn default() -> Self {
        T0Region { c2: C2_DEFAULT }
    }
}

impl T0Region {
    pub fn new(c2: f64) -> Self {
        T0Region { c2 }
    }

    /// Half-height of the region above `x`.
    pub fn height(&self, x: f64) -> f64 {
        self.c2 / tolerant_ceil(f_bound(1.0, x))
    }

    pub fn contains(&self, t: Complex64) -> bool {
        t.im.abs() < self.height(t.re)
    }
}

/// Membership in `T₀` with the default constant.
pub fn in_t0(t: Complex64) -> bool {
    T0Region::default().contains(t)
}
