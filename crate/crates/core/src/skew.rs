//! Twisted polynomials and truncated twisted series `Σ c_i τ^{n i}`.
//!
//! Multiplication follows `c τ^i · d τ^j = c τ^i(d) τ^{i+j}`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{DifferenceField, DifferenceRing};

#[derive(Clone, Debug)]
pub struct SkewOperator<R> {
    coeffs: Vec<R>,
    tau_power: u32,
    trunc: Option<usize>,
}

impl<R: DifferenceRing> SkewOperator<R> {
    /// Exact polynomial `Σ coeffs[i] τ^{n i}`. `coeffs` must be nonempty.
    pub fn poly(coeffs: Vec<R>, tau_power: u32) -> Self {
        assert!(!coeffs.is_empty(), "operator needs at least one coefficient");
        assert!(tau_power >= 1);
        let mut op = SkewOperator { coeffs, tau_power, trunc: None };
        op.strip();
        op
    }

    /// Series known through `τ^{n·trunc}`; extra coefficients are dropped, missing ones are zero.
    pub fn series(mut coeffs: Vec<R>, tau_power: u32, trunc: usize) -> Self {
        assert!(!coeffs.is_empty(), "operator needs at least one coefficient");
        assert!(tau_power >= 1);
        let z = coeffs[0].zero_like();
        coeffs.resize(trunc + 1, z);
        SkewOperator { coeffs, tau_power, trunc: Some(trunc) }
    }

    fn strip(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().unwrap().is_zero() {
            self.coeffs.pop();
        }
    }

    /// `c · τ^0`.
    pub fn scalar(c: R, tau_power: u32) -> Self {
        Self::poly(vec![c], tau_power)
    }

    pub fn identity(like: &R, tau_power: u32) -> Self {
        Self::scalar(like.one_like(), tau_power)
    }

    /// `c · τ^{n k}`.
    pub fn monomial(c: R, k: usize, tau_power: u32) -> Self {
        let mut v = vec![c.zero_like(); k];
        v.push(c);
        Self::poly(v, tau_power)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&R> {
        self.coeffs.get(i)
    }

    pub fn tau_power(&self) -> u32 {
        self.tau_power
    }

    pub fn trunc(&self) -> Option<usize> {
        self.trunc
    }

    pub fn is_polynomial(&self) -> bool {
        self.trunc.is_none()
    }

    /// Index of the last nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Re-truncates a series (or truncates a polynomial) at `τ^{n·trunc}`.
    pub fn truncated(&self, trunc: usize) -> Self {
        let t = self.trunc.map_or(trunc, |s| s.min(trunc));
        Self::series(self.coeffs.iter().take(t + 1).cloned().collect(), self.tau_power, t)
    }

    fn combined_trunc(&self, o: &Self) -> Option<usize> {
        match (self.trunc, o.trunc) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    fn build(&self, coeffs: Vec<R>, trunc: Option<usize>) -> Self {
        match trunc {
            Some(t) => Self::series(coeffs, self.tau_power, t),
            None => Self::poly(coeffs, self.tau_power),
        }
    }

    fn check_power(&self, o: &Self) {
        assert_eq!(self.tau_power, o.tau_power, "operators over different powers of tau");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.sub(b))
    }

    fn zip(&self, o: &Self, f: impl Fn(&R, &R) -> R) -> Self {
        self.check_power(o);
        let trunc = self.combined_trunc(o);
        let n = self.coeffs.len().max(o.coeffs.len());
        let n = trunc.map_or(n, |t| n.min(t + 1));
        let z = self.coeffs[0].zero_like();
        let coeffs = (0..n).map(|i| f(self.coeffs.get(i).unwrap_or(&z), o.coeffs.get(i).unwrap_or(&z))).collect();
        self.build(coeffs, trunc)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    /// `c · L`.
    pub fn scale_left(&self, c: &R) -> Self {
        self.map_coeffs(|x| c.mul(x))
    }

    pub fn map_coeffs(&self, f: impl Fn(&R) -> R) -> Self {
        self.build(self.coeffs.iter().map(f).collect(), self.trunc)
    }

    /// Same operator with coefficients moved into another ring.
    pub fn lift<S: DifferenceRing>(&self, f: impl Fn(&R) -> S) -> SkewOperator<S> {
        let coeffs = self.coeffs.iter().map(f).collect();
        match self.trunc {
            Some(t) => SkewOperator::series(coeffs, self.tau_power, t),
            None => SkewOperator::poly(coeffs, self.tau_power),
        }
    }

    /// Coefficient of `τ^{nk}` in `L·M` is `Σ_{i+j=k} c_i τ^{ni}(d_j)`.
    pub fn skew_mul(&self, o: &Self) -> Self {
        self.skew_mul_with_scale(o).0
    }

    /// Product together with, per order, the least valuation among its summands
    /// (`None` for unvalued backends or when every summand vanishes).
    pub fn skew_mul_with_scale(&self, o: &Self) -> (Self, Vec<Option<i64>>) {
        self.check_power(o);
        let n = self.tau_power;
        let trunc = self.combined_trunc(o);
        let full = self.coeffs.len() + o.coeffs.len() - 1;
        let len = trunc.map_or(full, |t| full.min(t + 1));
        let z = self.coeffs[0].zero_like();
        let mut out = vec![z; len];
        let mut scale: Vec<Option<i64>> = vec![None; len];
        for (i, c) in self.coeffs.iter().enumerate().take(len) {
            if c.is_zero() && c.is_exact() {
                continue;
            }
            for (j, d) in o.coeffs.iter().enumerate().take(len - i) {
                let term = c.mul(&d.tau(n * i as u32));
                if let Some(v) = term.valuation() {
                    scale[i + j] = Some(scale[i + j].map_or(v, |s| s.min(v)));
                }
                out[i + j] = out[i + j].add(&term);
            }
        }
        (self.build(out, trunc), scale)
    }

    /// `Σ c_i τ^{ni}(z)`.
    pub fn apply(&self, z: &R) -> R {
        self.apply_in(z, R::clone)
    }

    /// Applies the operator to an element of a larger difference ring, coefficients
    /// transported by `lift`.
    pub fn apply_in<M: DifferenceRing>(&self, z: &M, lift: impl Fn(&R) -> M) -> M {
        let n = self.tau_power;
        let mut acc = z.zero_like();
        let mut tz = z.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                tz = tz.tau(n);
            }
            if c.is_zero() && c.is_exact() {
                continue;
            }
            acc = acc.add(&lift(c).mul(&tz));
        }
        acc
    }

    /// First `τ`-order where the coefficients disagree, within the common truncation.
    pub fn first_mismatch(&self, o: &Self) -> Option<usize> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let n = self.combined_trunc(o).map_or(n, |t| n.min(t + 1));
        let z = self.coeffs[0].zero_like();
        (0..n).find(|&i| !self.coeffs.get(i).unwrap_or(&z).agrees_with(o.coeffs.get(i).unwrap_or(&z)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tau_power": self.tau_power,
            "trunc": self.trunc,
            "coeffs": self.coeffs.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }
}

impl<R: DifferenceField> SkewOperator<R> {
    /// Right Euclidean division: `self = Q·m + R` with `deg R < deg m`.
    pub fn right_divide(&self, m: &Self) -> Result<(Self, Self)> {
        self.check_power(m);
        if !self.is_polynomial() || !m.is_polynomial() {
            return Err(Error::Domain("right division needs polynomial operators".into()));
        }
        let dm = m.degree().ok_or_else(|| Error::NotInvertible("division by the zero operator".into()))?;
        let lead = &m.coeffs[dm];
        let n = self.tau_power;
        let z = self.coeffs[0].zero_like();
        let mut rem = self.clone();
        let mut quot = vec![z.clone(); rem.coeffs.len().saturating_sub(dm).max(1)];
        while let Some(dr) = rem.degree() {
            if dr < dm {
                break;
            }
            let shift = dr - dm;
            let c = rem.coeffs[dr]
                .div(&lead.tau(n * shift as u32))
                .map_err(|_| Error::NotInvertible("leading coefficient of divisor".into()))?;
            let term = Self::monomial(c.clone(), shift, n);
            rem = rem.sub(&term.skew_mul(m));
            quot[shift] = quot[shift].add(&c);
        }
        Ok((Self::poly(quot, n), rem))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldTower, LaurentSeries, RationalFn};

    #[test]
    fn shift_twist() {
        let s = RationalFn::var();
        let tau = SkewOperator::monomial(RationalFn::one(), 1, 1);
        let lhs = tau.skew_mul(&SkewOperator::scalar(s.clone(), 1));
        let rhs = SkewOperator::monomial(s.add(&RationalFn::one()), 1, 1);
        assert_eq!(lhs.first_mismatch(&rhs), None);
        let rev = SkewOperator::scalar(s, 1).skew_mul(&tau);
        assert!(rev.first_mismatch(&lhs).is_some());
    }

    #[test]
    fn theta_minus_tau_squared() {
        let t = FieldTower::new(3, 1, 40).unwrap();
        let th = LaurentSeries::theta(&t);
        let one = LaurentSeries::one(&t);
        let l = SkewOperator::poly(vec![th.clone(), one.neg()], 1);
        let sq = l.skew_mul(&l);
        let expect = SkewOperator::poly(vec![th.square(), th.add(&th.frobenius(1)).neg(), one], 1);
        assert_eq!(sq.first_mismatch(&expect), None);
        assert_eq!(sq.degree(), Some(2));
    }

    #[test]
    fn apply_theta_plus_tau() {
        let t = FieldTower::new(2, 1, 40).unwrap();
        let th = LaurentSeries::theta(&t);
        let op = SkewOperator::poly(vec![th.clone(), LaurentSeries::one(&t)], 1);
        let z = LaurentSeries::from_theta_poly(&t, &[t.int(1), t.int(1)]);
        assert_eq!(op.apply(&z), th.mul(&z).add(&z.square()));
        assert_eq!(SkewOperator::identity(&th, 1).apply(&z), z);
    }

    #[test]
    fn right_division_trivial_cases() {
        let s = RationalFn::var();
        let l = SkewOperator::poly(vec![s.clone(), s.mul(&s), RationalFn::from_int(3)], 1);
        let (q, r) = l.right_divide(&l).unwrap();
        assert_eq!(q.first_mismatch(&SkewOperator::identity(&s, 1)), None);
        assert!(r.is_zero());
        let (q, r) = l.right_divide(&SkewOperator::identity(&s, 1)).unwrap();
        assert_eq!(q.first_mismatch(&l), None);
        assert!(r.is_zero());
    }
}
