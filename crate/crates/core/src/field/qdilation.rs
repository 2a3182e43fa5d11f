//! Laurent polynomials in `x` over `Q(q̂)` with the dilation `x ↦ q̂ x`.
//!
//! Truncations of bilateral series are represented by a valid window `[lo, hi]`
//! of exponents; coefficients outside it are unknown.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::ratfunc::RationalFn;
use super::ring::{DifferenceField, DifferenceRing, InversiveRing};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct QDilationElem {
    coeffs: BTreeMap<i64, RationalFn>,
    window: Option<(i64, i64)>,
    exact: bool,
}

impl fmt::Debug for QDilationElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().map(|(m, c)| format!("({})x^{m}", c.format_in("q"))).collect();
        write!(f, "{}", terms.join(" + "))?;
        if !self.exact {
            write!(f, " on {:?}", self.window)?;
        }
        Ok(())
    }
}

impl QDilationElem {
    pub fn exact(terms: impl IntoIterator<Item = (i64, RationalFn)>) -> Self {
        let coeffs = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        QDilationElem { coeffs, window: None, exact: true }
    }

    /// Known only on exponents `lo..=hi`.
    pub fn windowed(terms: impl IntoIterator<Item = (i64, RationalFn)>, lo: i64, hi: i64) -> Self {
        let window = (lo <= hi).then_some((lo, hi));
        let coeffs = terms
            .into_iter()
            .filter(|(m, c)| !c.is_zero() && window.is_some_and(|(l, h)| l <= *m && *m <= h))
            .collect();
        QDilationElem { coeffs, window, exact: false }
    }

    pub fn zero() -> Self {
        Self::exact([])
    }

    pub fn one() -> Self {
        Self::exact([(0, RationalFn::one())])
    }

    /// `c·x^m`.
    pub fn monomial(c: RationalFn, m: i64) -> Self {
        Self::exact([(m, c)])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::monomial(RationalFn::one(), 1)
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Valid window, `None` for exact elements or when nothing is known.
    pub fn window(&self) -> Option<(i64, i64)> {
        self.window
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, RationalFn> {
        &self.coeffs
    }

    pub fn coeff(&self, m: i64) -> RationalFn {
        self.coeffs.get(&m).cloned().unwrap_or_else(RationalFn::zero)
    }

    fn support(&self) -> Option<(i64, i64)> {
        Some((*self.coeffs.keys().next()?, *self.coeffs.keys().next_back()?))
    }

    fn with_window(coeffs: BTreeMap<i64, RationalFn>, window: Option<(i64, i64)>, exact: bool) -> Self {
        if exact {
            return QDilationElem { coeffs, window: None, exact };
        }
        let window = window.filter(|(l, h)| l <= h);
        let coeffs = coeffs
            .into_iter()
            .filter(|(m, c)| !c.is_zero() && window.is_some_and(|(l, h)| l <= *m && *m <= h))
            .collect();
        QDilationElem { coeffs, window, exact }
    }

    fn meet(a: &Self, b: &Self) -> (Option<(i64, i64)>, bool) {
        match (a.exact, b.exact) {
            (true, true) => (None, true),
            (true, false) => (b.window, false),
            (false, true) => (a.window, false),
            (false, false) => match (a.window, b.window) {
                (Some((l1, h1)), Some((l2, h2))) => (Some((l1.max(l2), h1.min(h2))), false),
                _ => (None, false),
            },
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let (window, exact) = Self::meet(self, o);
        let mut coeffs = self.coeffs.clone();
        for (m, c) in &o.coeffs {
            let e = coeffs.entry(*m).or_insert_with(RationalFn::zero);
            *e = e.add(c);
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self::with_window(coeffs, window, exact)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(m, c)| (*m, c.neg())).collect();
        QDilationElem { coeffs, window: self.window, exact: self.exact }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (window, exact) = match (self.exact, o.exact) {
            (true, true) => (None, true),
            (false, false) => (None, false),
            (true, false) | (false, true) => {
                let (e, w) = if self.exact { (self, o) } else { (o, self) };
                match (e.support(), w.window) {
                    (None, _) => (None, true),
                    (Some((sa, ea)), Some((lb, hb))) => (Some((lb + ea, hb + sa)), false),
                    (Some(_), None) => (None, false),
                }
            }
        };
        let mut coeffs: BTreeMap<i64, RationalFn> = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &o.coeffs {
                let e = coeffs.entry(i + j).or_insert_with(RationalFn::zero);
                *e = e.add(&a.mul(b));
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self::with_window(coeffs, window, exact)
    }

    /// `τ^n` for any integer `n`: `x^m ↦ q̂^{nm} x^m`.
    pub fn dilate(&self, n: i64) -> Self {
        let coeffs = self.coeffs.iter().map(|(m, c)| (*m, c.mul(&RationalFn::var_pow(n * m)))).collect();
        QDilationElem { coeffs, window: self.window, exact: self.exact }
    }

    /// Division by an exact monomial `c·x^k`.
    pub fn div_monomial(&self, c: &RationalFn, k: i64) -> Result<Self> {
        let ci = c.inv()?;
        let coeffs = self.coeffs.iter().map(|(m, a)| (m - k, a.mul(&ci))).collect();
        let window = self.window.map(|(l, h)| (l - k, h - k));
        Ok(QDilationElem { coeffs, window, exact: self.exact })
    }

    /// Zero at every known exponent, with a nonempty window unless exact.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self.coeffs.iter().map(|(m, c)| json!([m, c.to_json()])).collect();
        json!({ "variable": "x", "window": self.window.map(|(l, h)| [l, h]), "exact": self.exact, "coeffs": coeffs })
    }

    pub fn require_window(&self, lo: i64, hi: i64) -> Result<()> {
        if self.exact {
            return Ok(());
        }
        match self.window {
            Some((l, h)) if l <= lo && hi <= h => Ok(()),
            w => Err(Error::WindowTooSmall(format!("need [{lo}, {hi}], have {w:?}"))),
        }
    }
}

impl DifferenceRing for QDilationElem {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn int_like(&self, n: i64) -> Self {
        Self::exact([(0, RationalFn::from_int(n))])
    }
    fn is_zero(&self) -> bool {
        QDilationElem::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        QDilationElem::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        QDilationElem::sub(self, other)
    }
    fn neg(&self) -> Self {
        QDilationElem::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        QDilationElem::mul(self, other)
    }
    fn tau(&self, n: u32) -> Self {
        self.dilate(n as i64)
    }
    fn is_exact(&self) -> bool {
        self.exact
    }
    fn to_json(&self) -> Value {
        QDilationElem::to_json(self)
    }
}

impl DifferenceField for QDilationElem {
    /// Only exact monomial divisors are supported.
    fn div(&self, other: &Self) -> Result<Self> {
        match (other.exact, other.coeffs.len()) {
            (true, 1) => {
                let (k, c) = other.coeffs.iter().next().unwrap();
                self.div_monomial(c, *k)
            }
            _ => Err(Error::Domain("division by a non-monomial in the dilation ring".into())),
        }
    }
}

impl InversiveRing for QDilationElem {
    fn tau_inv(&self, n: u32) -> Self {
        self.dilate(-(n as i64))
    }
}
