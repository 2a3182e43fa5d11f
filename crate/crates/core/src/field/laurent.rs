//! Truncated Laurent series in `u = 1/θ` over `F_{q^d}`.
//!
//! A series stores its nonzero terms below an absolute precision `prec`: every
//! coefficient at an exponent `< prec` is known, nothing at or beyond it is.
//! [`EXACT`] marks Laurent polynomials. Inverting an exact series that is not a
//! monomial yields the tower's relative precision: that many digits past the
//! leading term.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use super::fq::FqElem;
use super::ring::{DifferenceField, DifferenceRing};
use super::tower::FieldTower;
use crate::error::{Error, Result};

pub const EXACT: i64 = i64::MAX / 4;
const DENSE_LIMIT: i64 = 1 << 22;

fn sat_add(a: i64, b: i64) -> i64 {
    if a >= EXACT || b >= EXACT {
        EXACT
    } else {
        (a + b).min(EXACT)
    }
}

#[derive(Clone)]
pub struct LaurentSeries {
    tower: Arc<FieldTower>,
    terms: Vec<(i64, FqElem)>,
    prec: i64,
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl PartialEq for LaurentSeries {
    fn eq(&self, other: &Self) -> bool {
        self.prec == other.prec && self.terms == other.terms
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .map(|&(e, c)| {
                let c = self.tower.format(c);
                let c = if c.contains('+') { format!("({c})") } else { c };
                match e {
                    0 => c,
                    _ => format!("{c}*u^{e}"),
                }
            })
            .collect();
        if self.prec < EXACT {
            parts.push(format!("O(u^{})", self.prec));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl LaurentSeries {
    /// Builds a series from arbitrary `(exponent, coefficient)` pairs; duplicates are summed,
    /// zeros and terms at or beyond `prec` dropped.
    pub fn new(tower: &Arc<FieldTower>, terms: Vec<(i64, FqElem)>, prec: i64) -> Self {
        Self::raw(tower, terms, prec.min(EXACT))
    }

    fn raw(tower: &Arc<FieldTower>, mut terms: Vec<(i64, FqElem)>, prec: i64) -> Self {
        terms.sort_by_key(|t| t.0);
        let mut out: Vec<(i64, FqElem)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if e >= prec {
                break;
            }
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 = tower.add(last.1, c),
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        LaurentSeries { tower: tower.clone(), terms: out, prec }
    }

    fn from_sorted(tower: &Arc<FieldTower>, terms: Vec<(i64, FqElem)>, prec: i64) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero() && t.0 < prec));
        LaurentSeries { tower: tower.clone(), terms, prec }
    }

    pub fn zero(tower: &Arc<FieldTower>) -> Self {
        Self::from_sorted(tower, Vec::new(), EXACT)
    }

    /// Zero known up to (but excluding) `u^prec`.
    pub fn zero_to(tower: &Arc<FieldTower>, prec: i64) -> Self {
        Self::new(tower, Vec::new(), prec)
    }

    pub fn one(tower: &Arc<FieldTower>) -> Self {
        Self::constant(tower, FqElem::ONE)
    }

    pub fn constant(tower: &Arc<FieldTower>, c: FqElem) -> Self {
        Self::monomial(tower, c, 0)
    }

    pub fn monomial(tower: &Arc<FieldTower>, c: FqElem, exp: i64) -> Self {
        Self::raw(tower, vec![(exp, c)], EXACT)
    }

    /// `θ = u^{-1}`.
    pub fn theta(tower: &Arc<FieldTower>) -> Self {
        Self::monomial(tower, FqElem::ONE, -1)
    }

    /// `θ^n` for `n ≥ 0`, or `u^{-n}` in general.
    pub fn theta_pow(tower: &Arc<FieldTower>, n: i64) -> Self {
        Self::monomial(tower, FqElem::ONE, -n)
    }

    /// The polynomial `Σ c_i θ^i` with coefficients in `F_{q^d}`.
    pub fn from_theta_poly(tower: &Arc<FieldTower>, coeffs: &[FqElem]) -> Self {
        Self::raw(tower, coeffs.iter().enumerate().map(|(i, &c)| (-(i as i64), c)).collect(), EXACT)
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn terms(&self) -> &[(i64, FqElem)] {
        &self.terms
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Least exponent with a nonzero coefficient.
    pub fn order(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    /// The order, or the precision for a series that is zero at every known position.
    pub fn val(&self) -> i64 {
        self.order().unwrap_or(self.prec)
    }

    pub fn leading(&self) -> Option<(i64, FqElem)> {
        self.terms.first().copied()
    }

    /// Degree as a polynomial in `θ`, i.e. minus the order.
    pub fn theta_degree(&self) -> Option<i64> {
        self.order().map(|o| -o)
    }

    /// Coefficient of `u^k`, or `None` when `k` is beyond the precision.
    pub fn coeff(&self, k: i64) -> Option<FqElem> {
        if k >= self.prec {
            return None;
        }
        Some(match self.terms.binary_search_by_key(&k, |t| t.0) {
            Ok(i) => self.terms[i].1,
            Err(_) => FqElem::ZERO,
        })
    }

    /// Number of nonzero terms.
    pub fn weight(&self) -> usize {
        self.terms.len()
    }

    pub fn truncate(&self, prec: i64) -> Self {
        let p = prec.min(self.prec);
        let terms = self.terms.iter().copied().take_while(|t| t.0 < p).collect();
        Self::from_sorted(&self.tower, terms, p)
    }

    /// Forgets exactness; the result is known only below `prec`.
    pub fn with_prec(&self, prec: i64) -> Self {
        self.truncate(prec)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let f = &self.tower;
        let prec = self.prec.min(other.prec);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        loop {
            let next = match (a.get(i), b.get(j)) {
                (None, None) => break,
                (Some(&x), None) => {
                    i += 1;
                    x
                }
                (None, Some(&(e, c))) => {
                    j += 1;
                    (e, if negate { f.neg(c) } else { c })
                }
                (Some(&(ea, ca)), Some(&(eb, cb))) => {
                    if ea < eb {
                        i += 1;
                        (ea, ca)
                    } else if eb < ea {
                        j += 1;
                        (eb, if negate { f.neg(cb) } else { cb })
                    } else {
                        i += 1;
                        j += 1;
                        (ea, if negate { f.sub(ca, cb) } else { f.add(ca, cb) })
                    }
                }
            };
            if next.0 >= prec {
                break;
            }
            if !next.1.is_zero() {
                out.push(next);
            }
        }
        Self::from_sorted(f, out, prec)
    }

    pub fn neg(&self) -> Self {
        let f = &self.tower;
        Self::from_sorted(f, self.terms.iter().map(|&(e, c)| (e, f.neg(c))).collect(), self.prec)
    }

    pub fn scale(&self, c: FqElem) -> Self {
        if c.is_zero() {
            return Self::zero_to(&self.tower, self.prec);
        }
        let f = &self.tower;
        Self::from_sorted(f, self.terms.iter().map(|&(e, x)| (e, f.mul(x, c))).collect(), self.prec)
    }

    /// Multiplication by `u^k`.
    pub fn mul_u_pow(&self, k: i64) -> Self {
        let prec = if self.is_exact() { EXACT } else { self.prec + k };
        let terms = self.terms.iter().map(|&(e, c)| (e + k, c)).take_while(|t| t.0 < prec).collect();
        Self::from_sorted(&self.tower, terms, prec)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = sat_add(self.val(), other.prec).min(sat_add(other.val(), self.prec));
        self.mul_to(other, prec)
    }

    /// Product truncated at `prec`, which must not exceed the natural precision.
    fn mul_to(&self, other: &Self, prec: i64) -> Self {
        let f = &self.tower;
        if self.terms.is_empty() || other.terms.is_empty() {
            return Self::from_sorted(f, Vec::new(), prec);
        }
        let (small, big) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let lo = small.terms[0].0 + big.terms[0].0;
        let hi = prec.min(small.terms.last().unwrap().0 + big.terms.last().unwrap().0 + 1);
        if hi <= lo {
            return Self::from_sorted(f, Vec::new(), prec);
        }
        let ext = f.ext();
        if hi - lo <= DENSE_LIMIT {
            let mut acc = vec![FqElem::ZERO; (hi - lo) as usize];
            for &(ea, ca) in &small.terms {
                for &(eb, cb) in &big.terms {
                    let e = ea + eb;
                    if e >= hi {
                        break;
                    }
                    let slot = &mut acc[(e - lo) as usize];
                    *slot = ext.add(*slot, ext.mul(ca, cb));
                }
            }
            let terms = acc
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (lo + i as i64, c))
                .collect();
            Self::from_sorted(f, terms, prec)
        } else {
            let mut acc: BTreeMap<i64, FqElem> = BTreeMap::new();
            for &(ea, ca) in &small.terms {
                for &(eb, cb) in &big.terms {
                    let e = ea + eb;
                    if e >= hi {
                        break;
                    }
                    let slot = acc.entry(e).or_insert(FqElem::ZERO);
                    *slot = ext.add(*slot, ext.mul(ca, cb));
                }
            }
            let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            Self::from_sorted(f, terms, prec)
        }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.tower);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// `τ^n`: coefficients raised to `q^n`, exponents multiplied by `q^n`.
    pub fn frobenius(&self, n: u32) -> Self {
        if n == 0 {
            return self.clone();
        }
        let f = &self.tower;
        let qn = (f.q() as i64).checked_pow(n).expect("q^n overflows i64");
        let prec = if self.is_exact() {
            EXACT
        } else if self.prec > 0 {
            self.prec.saturating_mul(qn).min(EXACT - 1)
        } else {
            self.prec.checked_mul(qn).expect("exponent overflow in frobenius")
        };
        let mut terms = Vec::with_capacity(self.terms.len());
        for &(e, c) in &self.terms {
            let ne = e.saturating_mul(qn);
            if ne >= prec {
                break;
            }
            assert!(ne > i64::MIN, "exponent overflow in frobenius");
            terms.push((ne, f.frob_q(c, n)));
        }
        Self::from_sorted(f, terms, prec)
    }

    /// Inverse to its natural precision; exact monomials invert exactly and other exact
    /// series to the tower's relative precision.
    pub fn inverse(&self) -> Result<Self> {
        let (v, _) = self.leading().ok_or_else(|| self.not_invertible())?;
        if self.is_exact() && self.terms.len() == 1 {
            return self.inverse_to(EXACT);
        }
        let target = if self.is_exact() { self.tower.rel_prec() - v } else { self.prec - 2 * v };
        self.inverse_to(target)
    }

    fn not_invertible(&self) -> Error {
        if self.is_exact() {
            Error::NotInvertible("zero series".into())
        } else {
            Error::PrecisionUnderflow { order: self.prec, prec: self.prec }
        }
    }

    /// Inverse known below `target`, which must not exceed the natural precision.
    fn inverse_to(&self, target: i64) -> Result<Self> {
        let f = &self.tower;
        let (v, c) = self.leading().ok_or_else(|| self.not_invertible())?;
        let c_inv = f.inv(c)?;
        if self.terms.len() == 1 && self.is_exact() {
            return Ok(Self::from_sorted(f, vec![(-v, c_inv)], EXACT));
        }
        let n = target + v;
        if n <= 0 {
            return Ok(Self::from_sorted(f, Vec::new(), target));
        }
        let n = n as usize;
        let tail: Vec<(usize, FqElem)> = self.terms[1..]
            .iter()
            .map(|&(e, a)| ((e - v) as usize, f.mul(a, c_inv)))
            .take_while(|t| t.0 < n)
            .collect();
        let mut b = vec![FqElem::ZERO; n];
        b[0] = c_inv;
        let ext = f.ext();
        for k in 1..n {
            let mut s = FqElem::ZERO;
            for &(j, a) in &tail {
                if j > k {
                    break;
                }
                s = ext.add(s, ext.mul(a, b[k - j]));
            }
            b[k] = ext.neg(s);
        }
        let terms = b.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k as i64 - v, x)).collect();
        Ok(Self::from_sorted(f, terms, target))
    }

    /// `self / other`. Exact operands dividing exactly give an exact quotient.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let f = &self.tower;
        let (vy, _) = other.leading().ok_or_else(|| other.not_invertible())?;
        if self.is_exact() && self.is_zero() {
            return Ok(Self::zero(f));
        }
        if self.is_exact() && other.is_exact() {
            if let Some(qt) = self.exact_quotient(other) {
                return Ok(qt);
            }
        }
        let vx = self.val();
        let mut target = EXACT;
        if self.is_exact() && other.is_exact() {
            target = vx - vy + f.rel_prec();
        }
        if !self.is_exact() {
            target = target.min(self.prec - vy);
        }
        if !other.is_exact() {
            target = target.min(vx + other.prec - 2 * vy);
        }
        if self.is_zero() {
            return Ok(Self::from_sorted(f, Vec::new(), target));
        }
        let inv = if other.is_exact() && other.weight() == 1 {
            other.inverse_to(EXACT)?
        } else {
            other.inverse_to(target - vx)?
        };
        Ok(self.mul_to(&inv, target))
    }

    fn exact_quotient(&self, other: &Self) -> Option<Self> {
        let f = &self.tower;
        let (vx, _) = self.leading()?;
        let (vy, _) = other.leading()?;
        let top_x = self.terms.last()?.0;
        let top_y = other.terms.last()?.0;
        let span = (top_x - vx) - (top_y - vy);
        if span < 0 {
            return None;
        }
        let inv = other.inverse_to(span + 1 - vy).ok()?;
        let qt = self.mul_to(&inv, span + 1 + vx - vy);
        let qt = Self::from_sorted(f, qt.terms, EXACT);
        (qt.mul(other) == *self).then_some(qt)
    }

    /// First exponent where `self` and `other` differ within their common precision.
    pub fn first_mismatch(&self, other: &Self) -> Option<i64> {
        self.sub(other).order()
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self.terms.iter().map(|&(e, c)| json!([e, self.tower.format(c)])).collect();
        json!({
            "variable": "u",
            "order": self.order(),
            "prec": if self.is_exact() { None } else { Some(self.prec) },
            "coeffs": coeffs,
        })
    }

    pub fn from_json(tower: &Arc<FieldTower>, v: &Value) -> Result<Self> {
        let bad = || Error::Parse("malformed series JSON".into());
        let prec = match v.get("prec") {
            Some(Value::Null) | None => EXACT,
            Some(p) => p.as_i64().ok_or_else(bad)?,
        };
        let mut terms = Vec::new();
        for t in v.get("coeffs").and_then(Value::as_array).ok_or_else(bad)? {
            let e = t.get(0).and_then(Value::as_i64).ok_or_else(bad)?;
            let c = t.get(1).and_then(Value::as_str).ok_or_else(bad)?;
            terms.push((e, tower.parse(c)?));
        }
        Ok(Self::new(tower, terms, prec))
    }
}

impl DifferenceRing for LaurentSeries {
    fn zero_like(&self) -> Self {
        Self::zero(&self.tower)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.tower)
    }
    fn int_like(&self, n: i64) -> Self {
        Self::constant(&self.tower, self.tower.int(n))
    }
    fn is_zero(&self) -> bool {
        LaurentSeries::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        LaurentSeries::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        LaurentSeries::sub(self, other)
    }
    fn neg(&self) -> Self {
        LaurentSeries::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        LaurentSeries::mul(self, other)
    }
    fn tau(&self, n: u32) -> Self {
        self.frobenius(n)
    }
    fn is_exact(&self) -> bool {
        LaurentSeries::is_exact(self)
    }
    fn precision(&self) -> Option<i64> {
        (!self.is_exact()).then_some(self.prec)
    }
    fn valuation(&self) -> Option<i64> {
        self.order()
    }
    fn to_json(&self) -> Value {
        LaurentSeries::to_json(self)
    }
}

impl DifferenceField for LaurentSeries {
    fn div(&self, other: &Self) -> Result<Self> {
        LaurentSeries::div(self, other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(q: u64) -> Arc<FieldTower> {
        FieldTower::new(q, 1, 64).unwrap()
    }

    #[test]
    fn frobenius_of_theta_and_constants() {
        let t = tower(5);
        let th = LaurentSeries::theta(&t);
        assert_eq!(th.frobenius(1), LaurentSeries::theta_pow(&t, 5));
        assert_eq!(LaurentSeries::one(&t).frobenius(3), LaurentSeries::one(&t));
    }

    #[test]
    fn frobenius_q3_example() {
        let t = tower(3);
        let x = LaurentSeries::new(&t, vec![(1, FqElem::ONE), (2, FqElem::ONE)], EXACT);
        let y = LaurentSeries::new(&t, vec![(3, FqElem::ONE), (6, FqElem::ONE)], EXACT);
        assert_eq!(x.frobenius(1), y);
        let x = x.with_prec(10);
        assert_eq!(x.frobenius(1).prec(), 30);
    }

    #[test]
    fn inverse_of_one_minus_u() {
        let t = tower(2);
        let x = LaurentSeries::new(&t, vec![(0, FqElem::ONE), (1, FqElem::ONE)], EXACT);
        let inv = x.inverse().unwrap();
        assert_eq!(inv.prec(), 64);
        assert_eq!(inv.weight(), 64);
        let prod = inv.mul(&x);
        assert_eq!(prod.first_mismatch(&LaurentSeries::one(&t)), None);
    }

    #[test]
    fn exact_division() {
        let t = tower(3);
        let f = t.clone();
        let a = LaurentSeries::from_theta_poly(&t, &[f.int(1), f.int(0), f.int(1)]);
        let b = LaurentSeries::from_theta_poly(&t, &[f.int(2), f.int(1)]);
        let prod = a.mul(&b);
        let qt = prod.div(&b).unwrap();
        assert!(qt.is_exact());
        assert_eq!(qt, a);
        let r = a.div(&b).unwrap();
        assert!(!r.is_exact());
        assert_eq!(r.mul(&b).first_mismatch(&a), None);
    }

    #[test]
    fn inverting_unknown_is_error() {
        let t = tower(2);
        let z = LaurentSeries::zero_to(&t, 5);
        assert!(matches!(z.inverse(), Err(Error::PrecisionUnderflow { .. })));
        assert!(LaurentSeries::zero(&t).inverse().is_err());
    }

    #[test]
    fn precision_of_products() {
        let t = tower(2);
        let x = LaurentSeries::new(&t, vec![(-2, FqElem::ONE), (0, FqElem::ONE)], 10);
        let y = LaurentSeries::new(&t, vec![(1, FqElem::ONE)], 7);
        assert_eq!(x.mul(&y).prec(), (-2 + 7));
    }

    #[test]
    fn json_roundtrip() {
        let t = FieldTower::new(4, 2, 40).unwrap();
        let g = t.ext().primitive();
        let x = LaurentSeries::new(&t, vec![(-3, g), (5, t.int(1))], 20);
        assert_eq!(LaurentSeries::from_json(&t, &x.to_json()).unwrap(), x);
        let e = LaurentSeries::theta(&t);
        assert_eq!(LaurentSeries::from_json(&t, &e.to_json()).unwrap(), e);
    }
}
