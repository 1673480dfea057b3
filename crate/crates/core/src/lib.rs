//! Exact computation of the nested characters built from lattice vertex
//! algebra data, with independent oracles for cross-checking.
//!
//! All arithmetic is exact: weights and exponents are rationals, series
//! coefficients are integers.

pub mod abengine;
pub mod blocks;
pub mod checks;
pub mod error;
pub mod linalg;
pub mod qser;
pub mod repdata;
pub mod rootsys;
pub mod sl2closed;
pub mod zhatref;

use num_bigint::BigInt;
use num_rational::Ratio;

pub use error::{Error, Result};

/// Exact rational used for weights and exponents.
pub type Rat = Ratio<i64>;
/// Arbitrary-precision rational used by the linear solver.
pub type BigRat = Ratio<BigInt>;
/// The interchange q-series type: integer coefficients.
pub type QSeries = qser::Series<i64>;
