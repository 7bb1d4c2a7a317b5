//! Scalar traits used by the generic parts of the crate.

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

/// An exact field. Row reduction over one of these is canonical.
pub trait ExactField: Num + Clone + Ord + Neg<Output = Self> + FromPrimitive + Debug {}

impl<T> ExactField for T where T: Num + Clone + Ord + Neg<Output = Self> + FromPrimitive + Debug {}

/// Floating point scalar used for numerical dynamics.
pub trait Real:
    num_traits::Float + FromPrimitive + nalgebra::RealField + Copy + Debug + Send + Sync + 'static
{
    fn lit(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("representable literal")
    }

    fn to_f64_lossy(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
