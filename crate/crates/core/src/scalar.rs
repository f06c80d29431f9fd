//! Complex scalars and tolerances.

pub use num_complex::Complex64 as Scalar;

/// Entries below this magnitude are dropped from sparse storage.
pub const PRUNE: f64 = 1e-14;
/// Default verdict tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Pivot threshold for dense inversions.
pub const SINGULAR: f64 = 1e-10;

pub const ZERO: Scalar = Scalar::new(0.0, 0.0);
pub const ONE: Scalar = Scalar::new(1.0, 0.0);

#[inline]
pub fn c(re: f64, im: f64) -> Scalar {
    Scalar::new(re, im)
}

#[inline]
pub fn re(x: f64) -> Scalar {
    Scalar::new(x, 0.0)
}

/// `exp(2πi t)`
pub fn root_of_unity(t: f64) -> Scalar {
    let a = 2.0 * std::f64::consts::PI * t;
    Scalar::new(a.cos(), a.sin())
}
