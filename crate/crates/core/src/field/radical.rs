//! Series multiplied by a power of the radical `ρ` with `ρ^{q-1} = -θ`.

use std::fmt;

use num_rational::Ratio;
use serde_json::{json, Value};

use super::laurent::LaurentSeries;
use super::ring::{DifferenceField, DifferenceRing};
use crate::error::{Error, Result};

/// `ρ^rho_deg · body` with `rho_deg ∈ {0, …, q-2}`.
#[derive(Clone, PartialEq)]
pub struct RadicalScaled {
    rho_deg: u64,
    body: LaurentSeries,
}

impl fmt::Debug for RadicalScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rho^{} * ({})", self.rho_deg, self.body)
    }
}

/// `(-θ)^c` as an exact series.
fn minus_theta_pow(body: &LaurentSeries, c: u64) -> LaurentSeries {
    let t = body.tower();
    let sign = if c % 2 == 1 { t.int(-1) } else { t.int(1) };
    LaurentSeries::monomial(t, sign, -(c as i64))
}

impl RadicalScaled {
    /// `ρ^e · body` for any `e ≥ 0`; whole multiples of `q-1` are folded into the body.
    pub fn new(e: u64, body: LaurentSeries) -> Self {
        let qm1 = body.tower().q() - 1;
        let (carry, e) = (e / qm1, e % qm1);
        let body = if carry == 0 { body } else { body.mul(&minus_theta_pow(&body, carry)) };
        RadicalScaled { rho_deg: e, body }
    }

    pub fn from_body(body: LaurentSeries) -> Self {
        RadicalScaled { rho_deg: 0, body }
    }

    /// `ρ` itself.
    pub fn rho(tower: &std::sync::Arc<crate::field::FieldTower>) -> Self {
        Self::new(1, LaurentSeries::one(tower))
    }

    pub fn rho_deg(&self) -> u64 {
        self.rho_deg
    }

    pub fn body(&self) -> &LaurentSeries {
        &self.body
    }

    pub fn into_body(self) -> LaurentSeries {
        self.body
    }

    pub fn q(&self) -> u64 {
        self.body.tower().q()
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// `-log_q |x|`, counting `ρ` as `u^{-1/(q-1)}`.
    pub fn valuation(&self) -> Option<Ratio<i64>> {
        let qm1 = (self.q() - 1) as i64;
        self.body.order().map(|v| Ratio::new(v * qm1 - self.rho_deg as i64, qm1))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Result<Self> {
        let rho_deg = if self.body.is_zero() {
            other.rho_deg
        } else if other.body.is_zero() || other.rho_deg == self.rho_deg {
            self.rho_deg
        } else {
            return Err(Error::Mismatch(format!(
                "cannot add radical degrees {} and {}",
                self.rho_deg, other.rho_deg
            )));
        };
        let body = if negate { self.body.sub(&other.body) } else { self.body.add(&other.body) };
        Ok(RadicalScaled { rho_deg, body })
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("radical-inhomogeneous sum")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("radical-inhomogeneous difference")
    }

    pub fn neg(&self) -> Self {
        RadicalScaled { rho_deg: self.rho_deg, body: self.body.neg() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.rho_deg + other.rho_deg, self.body.mul(&other.body))
    }

    /// Multiplies the body by a radical-free series.
    pub fn mul_body(&self, s: &LaurentSeries) -> Self {
        RadicalScaled { rho_deg: self.rho_deg, body: self.body.mul(s) }
    }

    pub fn div_body(&self, s: &LaurentSeries) -> Result<Self> {
        Ok(RadicalScaled { rho_deg: self.rho_deg, body: self.body.div(s)? })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let body = self.body.div(&other.body)?;
        if self.rho_deg >= other.rho_deg {
            Ok(RadicalScaled { rho_deg: self.rho_deg - other.rho_deg, body })
        } else {
            let qm1 = self.q() - 1;
            let body = body.div(&minus_theta_pow(&body, 1))?;
            Ok(RadicalScaled { rho_deg: self.rho_deg + qm1 - other.rho_deg, body })
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_body(LaurentSeries::one(self.body.tower()));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `τ^n`, using `ρ^{q^n} = ρ^{e'}(-θ)^c`.
    pub fn frobenius(&self, n: u32) -> Self {
        let q = self.q();
        let e = self.rho_deg * q.pow(n);
        Self::new(e, self.body.frobenius(n))
    }

    pub fn truncate(&self, prec: i64) -> Self {
        RadicalScaled { rho_deg: self.rho_deg, body: self.body.truncate(prec) }
    }

    pub fn to_json(&self) -> Value {
        json!({ "rho_deg": self.rho_deg, "body": self.body.to_json() })
    }
}

impl DifferenceRing for RadicalScaled {
    fn zero_like(&self) -> Self {
        Self::from_body(LaurentSeries::zero(self.body.tower()))
    }
    fn one_like(&self) -> Self {
        Self::from_body(LaurentSeries::one(self.body.tower()))
    }
    fn int_like(&self, n: i64) -> Self {
        Self::from_body(self.body.int_like(n))
    }
    fn is_zero(&self) -> bool {
        RadicalScaled::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RadicalScaled::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RadicalScaled::sub(self, other)
    }
    fn neg(&self) -> Self {
        RadicalScaled::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        RadicalScaled::mul(self, other)
    }
    fn tau(&self, n: u32) -> Self {
        self.frobenius(n)
    }
    fn is_exact(&self) -> bool {
        self.body.is_exact()
    }
    fn precision(&self) -> Option<i64> {
        DifferenceRing::precision(&self.body)
    }
    fn valuation(&self) -> Option<i64> {
        self.body.order()
    }
    fn to_json(&self) -> Value {
        RadicalScaled::to_json(self)
    }
}

impl DifferenceField for RadicalScaled {
    fn div(&self, other: &Self) -> Result<Self> {
        RadicalScaled::div(self, other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldTower;

    #[test]
    fn rho_squared_is_minus_theta_for_q3() {
        let t = FieldTower::new(3, 1, 40).unwrap();
        let rho = RadicalScaled::rho(&t);
        let sq = rho.mul(&rho);
        assert_eq!(sq.rho_deg(), 0);
        assert_eq!(*sq.body(), LaurentSeries::theta(&t).neg());
    }

    #[test]
    fn tau_of_rho_for_q3() {
        let t = FieldTower::new(3, 1, 40).unwrap();
        let rho = RadicalScaled::rho(&t);
        let tr = rho.frobenius(1);
        assert_eq!(tr.rho_deg(), 1);
        assert_eq!(*tr.body(), LaurentSeries::theta(&t).neg());
        assert_eq!(tr, rho.pow(3));
    }

    #[test]
    fn division_borrows_a_theta() {
        let t = FieldTower::new(4, 1, 40).unwrap();
        let rho = RadicalScaled::rho(&t);
        let one = rho.one_like();
        let inv = one.div(&rho).unwrap();
        assert_eq!(inv.rho_deg(), 2);
        let back = inv.mul(&rho);
        assert_eq!(back.rho_deg(), 0);
        assert_eq!(back.body().first_mismatch(&LaurentSeries::one(&t)), None);
    }

    #[test]
    fn valuation_counts_radical() {
        let t = FieldTower::new(3, 1, 40).unwrap();
        let x = RadicalScaled::new(1, LaurentSeries::theta(&t));
        assert_eq!(x.valuation(), Some(Ratio::new(-3, 2)));
    }
}
