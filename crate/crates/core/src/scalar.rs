//! Numeric abstraction for scores.
//!
//! Axiom checks only count rounds and voters, so they work on plain
//! integers. The harmonic score and the lsPAV improvement threshold are the
//! only fractional quantities, and they are generic over [`Scalar`].

use num_rational::Ratio;
use num_traits::{Num, ToPrimitive};
use std::fmt::Debug;

pub trait Scalar: Num + Clone + PartialOrd + Debug + Send + Sync {
    fn from_count(k: u64) -> Self;

    fn as_f64(&self) -> f64;

    /// `1 / k` for `k >= 1`.
    fn reciprocal(k: u64) -> Self {
        Self::one() / Self::from_count(k)
    }
}

impl Scalar for f64 {
    fn from_count(k: u64) -> Self {
        k as f64
    }

    fn as_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn from_count(k: u64) -> Self {
        k as f32
    }

    fn as_f64(&self) -> f64 {
        f64::from(*self)
    }
}

macro_rules! ratio_scalar {
    ($($t:ty)*) => ($(
        impl Scalar for Ratio<$t> {
            fn from_count(k: u64) -> Self {
                Ratio::from_integer(k as $t)
            }

            fn as_f64(&self) -> f64 {
                self.numer().to_f64().unwrap_or(f64::NAN) / self.denom().to_f64().unwrap_or(f64::NAN)
            }
        }
    )*)
}

ratio_scalar!(i64 i128);

/// Harmonic number `H_k = 1 + 1/2 + ... + 1/k`.
pub fn harmonic<S: Scalar>(k: u64) -> S {
    (1..=k).fold(S::zero(), |acc, j| acc + S::reciprocal(j))
}
