//! Exact transient analysis of max-plus linear systems.
//!
//! Everything is generic over an exact [`Scalar`]; the aliases below fix it to
//! `Ratio<i64>`, which is what the command-line tool uses.

pub mod analysis;
pub mod bounds;
pub mod critical;
pub mod error;
pub mod full_reversal;
pub mod graph;
pub mod matrix;
pub mod numtheory;
pub mod oracle;
pub mod paths;
pub mod scalar;
pub mod tropical;

pub use error::{Error, Result};
pub use graph::{Digraph, Edge, GraphParams, Path};
pub use matrix::{MaxPlusMatrix, MaxPlusVector};
pub use scalar::Scalar;
pub use tropical::Tropical;

pub type Rational = num_rational::Ratio<i64>;
pub type BigRational = num_rational::BigRational;
pub type Weight = Tropical<Rational>;
pub type Matrix = MaxPlusMatrix<Rational>;
pub type Vector = MaxPlusVector<Rational>;
pub type Graph = Digraph<Rational>;
