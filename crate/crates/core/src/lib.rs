//! A rational species algebra over Z/2-graded groupoids with exact
//! cardinalities. Bernoulli and Euler numbers and polynomials are computed
//! both combinatorially and by truncated series arithmetic.

pub mod builtins;
#[cfg(feature = "cli")]
pub mod cli;
pub mod egf;
pub mod error;
pub mod expr;
pub mod groupoid;
pub mod numbers;
pub mod numeric;
pub mod species;
pub mod verify;

pub use error::{Error, Result};
pub use numeric::{Rational, SizeVector};
