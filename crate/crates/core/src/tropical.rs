//! The max-plus scalar: an exact value or bottom (`-inf`).

use std::fmt;

use crate::scalar::Scalar;

/// Element of the max-plus semiring over an exact scalar `S`.
///
/// The derived ordering places `Bottom` below every finite value, so `max`
/// is the semiring addition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tropical<S> {
    Bottom,
    Finite(S),
}

impl<S: Scalar> Tropical<S> {
    pub fn zero() -> Self {
        Tropical::Finite(S::zero())
    }

    pub fn int(value: i64) -> Self {
        Tropical::Finite(S::from_i64(value))
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Tropical::Bottom)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_bottom()
    }

    pub fn finite(&self) -> Option<&S> {
        match self {
            Tropical::Finite(value) => Some(value),
            Tropical::Bottom => None,
        }
    }

    pub fn into_finite(self) -> Option<S> {
        match self {
            Tropical::Finite(value) => Some(value),
            Tropical::Bottom => None,
        }
    }

    /// Semiring product: ordinary addition, absorbing at bottom.
    pub fn otimes(&self, other: &Self) -> Self {
        match (self, other) {
            (Tropical::Finite(a), Tropical::Finite(b)) => Tropical::Finite(a.clone() + b.clone()),
            _ => Tropical::Bottom,
        }
    }

    /// Semiring sum: the larger of the two.
    pub fn oplus(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Adds a finite constant; bottom stays bottom.
    pub fn shift(&self, by: &S) -> Self {
        match self {
            Tropical::Finite(value) => Tropical::Finite(value.clone() + by.clone()),
            Tropical::Bottom => Tropical::Bottom,
        }
    }

    /// Negation of a finite value. Bottom maps to bottom, which is how `+inf`
    /// of a min-plus matrix is carried into the max-plus world.
    pub fn negated(&self) -> Self {
        match self {
            Tropical::Finite(value) => Tropical::Finite(-value.clone()),
            Tropical::Bottom => Tropical::Bottom,
        }
    }

    /// Parses an exact value or one of `-inf`, `-∞`, `bottom`.
    pub fn parse(text: &str) -> Option<Self> {
        match text.trim() {
            "-inf" | "-Inf" | "-INF" | "-∞" | "bottom" => Some(Tropical::Bottom),
            other => S::parse_exact(other).map(Tropical::Finite),
        }
    }
}

impl<S: Scalar> From<S> for Tropical<S> {
    fn from(value: S) -> Self {
        Tropical::Finite(value)
    }
}

/// Maximum over an iterator; bottom when empty.
pub fn max_of<S: Scalar>(values: impl IntoIterator<Item = Tropical<S>>) -> Tropical<S> {
    values
        .into_iter()
        .fold(Tropical::Bottom, |acc, value| if value > acc { value } else { acc })
}

impl<S: Scalar> fmt::Display for Tropical<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tropical::Finite(value) => write!(f, "{value}"),
            Tropical::Bottom => f.write_str("-inf"),
        }
    }
}
