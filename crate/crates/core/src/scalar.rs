//! Floating-point scalar abstraction.
//!
//! All real-valued math in this crate (distance matrices, assignment costs,
//! statistical validators) is generic over [`Real`], so the same code runs in
//! f32 or f64. Graph structure and feature vectors stay integral.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// f32 or f64 (or anything float-like enough).
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Lossless-enough conversion from a nonnegative integer quantity.
    fn from_count(c: usize) -> Self {
        Self::from_usize(c).expect("count representable in scalar type")
    }
}

impl<T> Real for T where
    T: Float + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}
