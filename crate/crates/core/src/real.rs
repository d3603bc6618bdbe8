use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive};

/// Scalar type for every numeric kernel in this crate: `f32`, `f64`, or any
/// other IEEE-style float. All tolerances are stated for `f64`; narrower
/// types compile and run but cannot certify the default tolerances.
pub trait Real:
    Float
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lift an `f64` constant into the scalar type.
    #[inline]
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("constant not representable in scalar type")
    }

    /// Lossy view as `f64`, for diagnostics and ordering only.
    #[inline]
    fn lossy_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<X> Real for X where
    X: Float
        + FromPrimitive
        + AddAssign
        + SubAssign
        + MulAssign
        + Sum
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// ln(1 + e^l) without overflow on either tail.
#[inline]
pub fn softplus<T: Real>(l: T) -> T {
    let cut = T::of(34.0);
    if l > cut {
        l + (-l).exp().ln_1p()
    } else if l < -cut {
        l.exp()
    } else {
        l.exp().ln_1p()
    }
}

/// Approximate equality used when merging breakpoints and comparing
/// analytically derived exponents.
#[inline]
pub fn near<T: Real>(a: T, b: T) -> bool {
    (a - b).abs() <= T::of(1e-12) * (T::one() + a.abs() + b.abs())
}
