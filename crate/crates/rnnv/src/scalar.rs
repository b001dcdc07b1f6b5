use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar the numerical layers are generic over.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Default + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Smallest magnitude treated as a numerical zero in structural checks.
    fn tiny() -> Self;
}

impl Real for f64 {
    #[inline]
    fn tiny() -> Self {
        1e-300
    }
}

impl Real for f32 {
    #[inline]
    fn tiny() -> Self {
        1e-30
    }
}
