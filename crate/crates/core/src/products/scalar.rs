use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::numbers::{complex_to_f64, Complex64, ExactComplex};

/// Scalar field of the product engine.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_exact(value: &ExactComplex) -> Self;
    fn conj(&self) -> Self;
}

impl Scalar for ExactComplex {
    fn from_exact(value: &ExactComplex) -> Self {
        value.clone()
    }

    fn conj(&self) -> Self {
        ExactComplex::conj(self)
    }
}

impl Scalar for Complex64 {
    fn from_exact(value: &ExactComplex) -> Self {
        complex_to_f64(value)
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
}
