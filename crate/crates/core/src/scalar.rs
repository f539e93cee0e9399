use std::fmt::{Debug, Display};

use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point type the numerical side of the crate is generic over.
pub trait Scalar: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {
    /// Nearest representable value to an exact rational. Values outside the
    /// range saturate to infinity.
    fn from_rational(value: &BigRational) -> Self {
        let approx = value.to_f64().unwrap_or_else(|| {
            if value.numer().sign() == value.denom().sign() {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            }
        });
        Self::from_f64(approx).unwrap_or_else(Self::nan)
    }

    fn from_usize_lossy(value: usize) -> Self {
        Self::from_usize(value).unwrap_or_else(Self::infinity)
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
