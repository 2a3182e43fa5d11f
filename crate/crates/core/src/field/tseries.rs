//! Truncated power series in an auxiliary variable `t`.

use serde_json::{json, Value};

use super::ring::{DifferenceField, DifferenceRing};
use crate::error::{Error, Result};

/// `c_0 + c_1 t + … + c_{M-1} t^{M-1} + O(t^M)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TSeries<C> {
    coeffs: Vec<C>,
}

impl<C: DifferenceRing> TSeries<C> {
    /// Pads with zeros or truncates to `t_prec` coefficients.
    pub fn new(mut coeffs: Vec<C>, zero: &C, t_prec: usize) -> Self {
        assert!(t_prec >= 1, "t-precision must be positive");
        coeffs.truncate(t_prec);
        while coeffs.len() < t_prec {
            coeffs.push(zero.zero_like());
        }
        TSeries { coeffs }
    }

    pub fn constant(c: C, t_prec: usize) -> Self {
        let z = c.zero_like();
        Self::new(vec![c], &z, t_prec)
    }

    /// `t` itself.
    pub fn t(like: &C, t_prec: usize) -> Self {
        Self::new(vec![like.zero_like(), like.one_like()], like, t_prec)
    }

    pub fn t_prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn truncate(&self, t_prec: usize) -> Self {
        TSeries { coeffs: self.coeffs[..t_prec.min(self.t_prec()).max(1)].to_vec() }
    }

    pub fn map<D: DifferenceRing>(&self, f: impl Fn(&C) -> D) -> TSeries<D> {
        TSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.t_prec().min(o.t_prec());
        TSeries { coeffs: (0..n).map(|i| self.coeffs[i].add(&o.coeffs[i])).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.t_prec().min(o.t_prec());
        TSeries { coeffs: (0..n).map(|i| self.coeffs[i].sub(&o.coeffs[i])).collect() }
    }

    pub fn neg(&self) -> Self {
        TSeries { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        TSeries { coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.t_prec().min(o.t_prec());
        let coeffs = (0..n)
            .map(|k| {
                let mut acc = self.coeffs[0].mul(&o.coeffs[k]);
                for i in 1..=k {
                    acc = acc.add(&self.coeffs[i].mul(&o.coeffs[k - i]));
                }
                acc
            })
            .collect();
        TSeries { coeffs }
    }

    /// Multiplication by `t^k`.
    pub fn shift_t(&self, k: usize) -> Self {
        let z = self.coeffs[0].zero_like();
        let mut c = vec![z.clone(); k.min(self.t_prec())];
        c.extend(self.coeffs.iter().cloned());
        Self::new(c, &z, self.t_prec())
    }

    /// `τ^n` applied to every coefficient.
    pub fn tau(&self, n: u32) -> Self {
        TSeries { coeffs: self.coeffs.iter().map(|c| c.tau(n)).collect() }
    }

    /// `t ↦ t^n`, keeping the same number of coefficients.
    pub fn substitute_power(&self, n: usize) -> Self {
        assert!(n >= 1);
        let z = self.coeffs[0].zero_like();
        let mut c = vec![z.clone(); self.t_prec()];
        for (i, x) in self.coeffs.iter().enumerate() {
            if i * n < c.len() {
                c[i * n] = x.clone();
            }
        }
        TSeries { coeffs: c }
    }

    /// `Σ c_i x^i` by Horner's rule.
    pub fn eval(&self, x: &C) -> C {
        let mut acc = self.coeffs.last().unwrap().clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::constant(self.coeffs[0].one_like(), self.t_prec());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// First `t`-index whose coefficients differ, within the common truncation.
    pub fn first_mismatch(&self, o: &Self) -> Option<usize> {
        let n = self.t_prec().min(o.t_prec());
        (0..n).find(|&i| !self.coeffs[i].agrees_with(&o.coeffs[i]))
    }

    pub fn to_json(&self) -> Value {
        json!({ "t_prec": self.t_prec(), "coeffs": self.coeffs.iter().map(|c| c.to_json()).collect::<Vec<_>>() })
    }
}

impl<C: DifferenceField> TSeries<C> {
    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        let one = c0.one_like();
        let inv0 = one.div(c0).map_err(|_| Error::NotInvertible("constant term of t-series".into()))?;
        let n = self.t_prec();
        let mut b = vec![inv0.clone()];
        for k in 1..n {
            let mut s = self.coeffs[1].mul(&b[k - 1]);
            for i in 2..=k {
                s = s.add(&self.coeffs[i].mul(&b[k - i]));
            }
            b.push(s.mul(&inv0).neg());
        }
        Ok(TSeries { coeffs: b })
    }
}

impl<C: DifferenceRing> DifferenceRing for TSeries<C> {
    fn zero_like(&self) -> Self {
        Self::new(Vec::new(), &self.coeffs[0], self.t_prec())
    }
    fn one_like(&self) -> Self {
        Self::constant(self.coeffs[0].one_like(), self.t_prec())
    }
    fn int_like(&self, n: i64) -> Self {
        Self::constant(self.coeffs[0].int_like(n), self.t_prec())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn add(&self, other: &Self) -> Self {
        TSeries::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        TSeries::sub(self, other)
    }
    fn neg(&self) -> Self {
        TSeries::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        TSeries::mul(self, other)
    }
    fn tau(&self, n: u32) -> Self {
        TSeries::tau(self, n)
    }
    fn is_exact(&self) -> bool {
        false
    }
    fn precision(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(|c| c.precision()).min()
    }
    fn valuation(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(|c| c.valuation()).min()
    }
    fn to_json(&self) -> Value {
        TSeries::to_json(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RationalFn;

    #[test]
    fn geometric_inverse() {
        let one = RationalFn::one();
        let one_minus_t = TSeries::new(vec![one.clone(), one.neg()], &one, 8);
        let inv = one_minus_t.inverse().unwrap();
        assert!(inv.coeffs().iter().all(|c| *c == one));
        assert_eq!(inv.mul(&one_minus_t).first_mismatch(&TSeries::constant(one, 8)), None);
    }

    #[test]
    fn substitution_is_multiplicative() {
        let s = RationalFn::var();
        let a = TSeries::new(vec![s.clone(), RationalFn::from_int(2), s.mul(&s)], &s, 9);
        let b = TSeries::new(vec![RationalFn::one(), s.clone()], &s, 9);
        assert_eq!(a.mul(&b).substitute_power(2), a.substitute_power(2).mul(&b.substitute_power(2)));
        let x = RationalFn::from_int(3);
        assert_eq!(a.mul(&b).eval(&x), a.eval(&x).mul(&b.eval(&x)));
    }
}
