//! Coefficient arithmetic for every backend.

mod fq;
mod laurent;
mod qdilation;
mod radical;
mod ratfunc;
mod ring;
mod tower;
mod tseries;

pub use fq::{is_prime, prime_power, FiniteField, FqElem, MAX_FIELD_SIZE};
pub use laurent::{LaurentSeries, EXACT};
pub use qdilation::QDilationElem;
pub use radical::RadicalScaled;
pub use ratfunc::{QPoly, RationalFn};
pub use ring::{DifferenceField, DifferenceRing, InversiveRing};
pub use tower::{FieldTower, DEFAULT_REL_PREC};
pub use tseries::TSeries;
