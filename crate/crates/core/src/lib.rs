//! Exact computation with super Harish-Chandra pairs: Weil superalgebra
//! arithmetic, Koszul-sign operator algebra, supergroup points by generators
//! and relations with canonical split normal forms, induced representations,
//! and executable equivalence checks — all over exact rationals.

pub mod checks;
pub mod error;
pub mod expr;
pub mod files;
pub mod lie;
mod linalg;
pub mod pair;
pub mod report;
pub mod repr;
pub mod rng;
pub mod scalar;
pub mod supergroup;
pub mod superlinear;
pub mod weil;

pub use error::{Error, Result};
pub use scalar::Scalar;

#[cfg(test)]
mod files_tests;
#[cfg(test)]
mod fixtures;
#[cfg(test)]
mod pair_tests;
#[cfg(test)]
mod weil_tests;
