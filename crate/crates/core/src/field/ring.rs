use serde_json::Value;

use crate::error::Result;

/// A commutative ring with a distinguished endomorphism `τ`.
///
/// Elements carry their own context (field tables, precision), so constants are
/// produced from an existing element with [`DifferenceRing::zero_like`] and friends.
/// For truncated backends `is_zero` means "zero at every known position".
pub trait DifferenceRing: Clone + Send + Sync + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `τ^n(self)`.
    fn tau(&self, n: u32) -> Self;
    fn is_exact(&self) -> bool {
        true
    }
    /// Absolute precision of a truncated element, `None` when exact.
    fn precision(&self) -> Option<i64> {
        None
    }
    /// Least exponent of a nonzero term for valued backends.
    fn valuation(&self) -> Option<i64> {
        None
    }
    fn to_json(&self) -> Value;

    fn agrees_with(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

pub trait DifferenceField: DifferenceRing {
    fn div(&self, other: &Self) -> Result<Self>;
}

/// Backends where `τ` is an automorphism.
pub trait InversiveRing: DifferenceRing {
    fn tau_inv(&self, n: u32) -> Self;
}
