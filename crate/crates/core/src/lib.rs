//! Generalized Carlitz modules over difference rings.
//!
//! Backends:
//! - [`field::LaurentSeries`] over `F_{q^d}` with `τ(c) = c^q` (function-field arithmetic),
//! - [`field::RationalFn`] over `Q` with `τ f(s) = f(s+1)`,
//! - [`field::QDilationElem`] with `τ x = q̂ x`,
//! - complex floating point for gamma-type checks in [`gamma`].

pub mod anderson_thakur;
pub mod carlitz;
pub mod error;
pub mod field;
pub mod gamma;
pub mod par;
pub mod report;
pub mod skew;
pub mod soundness;

pub use error::{Error, Result};
