//! Scalar abstraction: all numerical code in this crate is generic over a
//! floating-point type implementing [`Real`].

use std::fmt;

use num_traits::{Float, FloatConst, FromPrimitive, NumCast};

/// Floating-point scalar used throughout the crate (`f32` or `f64`).
///
/// Besides the usual arithmetic, the trait carries the comparison tolerances
/// appropriate for the type's precision. All quantities handled by this crate
/// are O(1), so absolute tolerances are used everywhere.
pub trait Real: Float + FloatConst + FromPrimitive + fmt::Debug + fmt::Display + 'static {
    /// Tolerance for exact-path comparisons (unit norms, closed-form identities).
    fn strict_tol() -> Self;

    /// Tolerance for projection-domain membership checks.
    fn domain_tol() -> Self;

    /// Cast an `f64` literal into this type.
    fn of(value: f64) -> Self {
        <Self as NumCast>::from(value).expect("literal representable in scalar type")
    }
}

impl Real for f64 {
    fn strict_tol() -> Self {
        1e-12
    }

    fn domain_tol() -> Self {
        1e-10
    }
}

impl Real for f32 {
    fn strict_tol() -> Self {
        1e-5
    }

    fn domain_tol() -> Self {
        1e-4
    }
}
