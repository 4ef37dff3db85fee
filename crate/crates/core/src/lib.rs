//! Dedekind–Carlitz polynomials, integer-point transforms of rational cones,
//! and exact verification of the reciprocity laws that relate them.

pub mod brion;
pub mod cones;
pub mod error;
pub mod exact;
pub mod identities;
pub mod laurent;
pub mod ratfun;
pub mod sums;

pub use error::{Error, Result};
pub use exact::{BigInt, BigRat};
pub use laurent::{ExpVec, LaurentPoly};
pub use ratfun::{RatTerm, ShortRatFun, Sign};
