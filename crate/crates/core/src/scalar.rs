//! Integer scalar abstraction shared by the field and lattice modules.
//!
//! Everything in `quadfield` and `latgeom` is generic over [`Int`], a signed
//! machine integer. `i64` covers every scan this crate runs; `i128` is there
//! for forms whose coefficients would overflow 64-bit products.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::{Integer, Roots};
use num_traits::{PrimInt, Signed};

use crate::error::{Error, Result};

/// Signed integer usable as a coefficient type.
pub trait Int:
    PrimInt + Signed + Integer + Roots + Hash + Debug + Display + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self {
        <Self as num_traits::NumCast>::from(v).expect("i64 fits in every Int")
    }

    fn from_u64(v: u64) -> Result<Self> {
        <Self as num_traits::NumCast>::from(v).ok_or(Error::Overflow)
    }

    fn to_u64_checked(self) -> Result<u64> {
        self.to_u64().ok_or(Error::Overflow)
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn four() -> Self {
        Self::two() + Self::two()
    }
}

impl<T> Int for T where
    T: PrimInt + Signed + Integer + Roots + Hash + Debug + Display + Send + Sync + 'static
{
}
