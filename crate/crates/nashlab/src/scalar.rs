//! Scalar abstraction for the numeric core.
//!
//! All cube geometry (points, displacement field, locality estimators, game
//! payoffs) is written against this trait so the same code runs at `f32` and
//! `f64`. Exact checks (segment orthogonality, code arithmetic) use integer
//! representations and do not go through this trait.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from `f64`; constants in profiles and formulas are
    /// specified in `f64` and narrowed here.
    fn from_f64_c(v: f64) -> Self {
        Self::from_f64(v).expect("constant must be representable")
    }

    /// Widening conversion used when reports need a common type.
    fn to_f64_c(self) -> f64 {
        self.to_f64().expect("scalar must convert to f64")
    }
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + Sum
        + Debug
        + Display
        + Default
        + Send
        + Sync
        + 'static
{
}
