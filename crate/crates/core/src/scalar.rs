use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::Serialize;

/// Floating-point scalar the whole crate is generic over.
///
/// Implemented for `f32` and `f64`. Numerical thresholds are written as `f64`
/// literals and converted with [`Scalar::lit`]; relative tolerances go through
/// [`Scalar::tol`], which never lets a threshold drop below a small multiple
/// of the type's machine epsilon (so `f64` sees the literal value unchanged
/// while `f32` gets a reachable bound).
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + Serialize + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    /// A relative tolerance, floored at `64 * epsilon`.
    #[inline]
    fn tol(x: f64) -> Self {
        Self::lit(x).max(Self::epsilon() * Self::lit(64.0))
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tol_is_unchanged_for_f64() {
        assert_eq!(<f64 as Scalar>::tol(1e-13), 1e-13);
        assert_eq!(<f64 as Scalar>::tol(1e-9), 1e-9);
    }

    #[test]
    fn tol_is_floored_for_f32() {
        let t = <f32 as Scalar>::tol(1e-13);
        assert!(t > 1e-6 && t < 1e-4);
    }
}
