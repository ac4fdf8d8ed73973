//! Exact scalar types the library is generic over.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// An exact ordered field element.
///
/// Every algorithm in this crate compares scalars for exact equality (periodicity
/// detection, critical-cycle detection), so only exact types implement this trait.
/// The blanket implementation covers `Ratio<T>` for any signed machine or big integer.
pub trait Scalar:
    Num + Signed + Clone + Ord + Hash + Debug + Display + Send + Sync + 'static
{
    fn from_i64(value: i64) -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn from_usize(value: usize) -> Self {
        Self::from_i64(value as i64)
    }

    /// Smallest integer that is not below `self`.
    fn ceil_i64(&self) -> i64;

    fn is_integral(&self) -> bool;

    /// Parses `"p"` or `"p/q"`.
    fn parse_exact(text: &str) -> Option<Self>;
}

impl<T> Scalar for Ratio<T>
where
    T: Integer
        + Signed
        + Clone
        + Hash
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + FromStr
        + Send
        + Sync
        + 'static,
{
    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(T::from_i64(value).expect("integer out of range for scalar"))
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(
            T::from_i64(numer).expect("integer out of range for scalar"),
            T::from_i64(denom).expect("integer out of range for scalar"),
        )
    }

    fn ceil_i64(&self) -> i64 {
        self.ceil()
            .to_integer()
            .to_i64()
            .expect("ceiling does not fit in i64")
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn parse_exact(text: &str) -> Option<Self> {
        let text = text.trim();
        if text.is_empty() {
            return None;
        }
        text.parse::<Ratio<T>>().ok()
    }
}

/// Converts a nonnegative count into a scalar.
pub(crate) fn count<S: Scalar>(value: usize) -> S {
    S::from_usize(value)
}

/// `max(0, ceil(value))` as a `usize`.
pub fn ceil_usize<S: Scalar>(value: &S) -> usize {
    value.ceil_i64().max(0) as usize
}
