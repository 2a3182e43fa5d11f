//! Exact rational functions over `Q` with the shift `f(s) ↦ f(s+1)`.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::ring::{DifferenceField, DifferenceRing, InversiveRing};
use crate::error::{Error, Result};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Dense polynomial over `Q`, coefficients low-to-high, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QPoly(Vec<BigRational>);

impl QPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly(c)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| rat(x)).collect())
    }

    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c · s^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = BigRational::zero();
        Self::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = BigRational::zero();
        Self::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) - o.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn neg(&self) -> Self {
        QPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division, `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dl = d.lead().ok_or_else(|| Error::NotInvertible("division by zero polynomial".into()))?.clone();
        let dd = d.0.len() - 1;
        let mut r = self.0.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &dl;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// Index of the lowest nonzero coefficient.
    fn low_order(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    fn is_monomial(&self) -> bool {
        self.low_order() == self.degree()
    }

    pub fn gcd(&self, o: &Self) -> Self {
        for (m, f) in [(self, o), (o, self)] {
            if m.is_monomial() && !m.is_zero() {
                let k = m.degree().unwrap().min(f.low_order().unwrap_or(usize::MAX));
                return Self::monomial(BigRational::one(), k);
            }
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `f(s + n)` by Horner's rule.
    pub fn shift(&self, n: &BigRational) -> Self {
        let lin = QPoly::new(vec![n.clone(), BigRational::one()]);
        self.0.iter().rev().fold(Self::zero(), |acc, c| acc.mul(&lin).add(&Self::constant(c.clone())))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.0.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        Self::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * rat(i as i64)).collect())
    }

    pub fn format_in(&self, var: &str) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match (i, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => var.to_string(),
                (1, false) => format!("{mag}*{var}"),
                (_, true) => format!("{var}^{i}"),
                (_, false) => format!("{mag}*{var}^{i}"),
            };
            parts.push((sign, body));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (sign, body)) in parts.into_iter().enumerate() {
            match (k, sign) {
                (0, "+") => {}
                (0, _) => s.push('-'),
                (_, sign) => {
                    s.push(' ');
                    s.push_str(sign);
                    s.push(' ');
                }
            }
            s.push_str(&body);
        }
        s
    }

    fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(|c| c.to_string()).collect()
    }

    fn from_strings(v: &Value) -> Result<Self> {
        let bad = || Error::Parse("malformed polynomial JSON".into());
        let arr = v.as_array().ok_or_else(bad)?;
        let mut c = Vec::with_capacity(arr.len());
        for x in arr {
            let s = x.as_str().ok_or_else(bad)?;
            c.push(s.parse::<BigRational>().map_err(|_| bad())?);
        }
        Ok(Self::new(c))
    }
}

/// `num/den` in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: QPoly,
    den: QPoly,
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("s"))
    }
}

impl RationalFn {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NotInvertible("zero denominator".into()));
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.degree() == Some(0) {
                (num, den)
            } else {
                (num.div_rem(&g).unwrap().0, den.div_rem(&g).unwrap().0)
            }
        };
        let l = den.lead().unwrap().recip();
        RationalFn { num: num.scale(&l), den: den.scale(&l) }
    }

    pub fn zero() -> Self {
        RationalFn { num: QPoly::zero(), den: QPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(QPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(QPoly::from_ints(&[n]))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(QPoly::constant(c))
    }

    pub fn from_poly(p: QPoly) -> Self {
        RationalFn { num: p, den: QPoly::one() }
    }

    /// The variable `s`.
    pub fn var() -> Self {
        Self::from_poly(QPoly::from_ints(&[0, 1]))
    }

    /// `s^k` for any integer `k`.
    pub fn var_pow(k: i64) -> Self {
        let m = QPoly::monomial(BigRational::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_poly(m)
        } else {
            RationalFn { num: QPoly::one(), den: m }
        }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_polynomial() && o.is_polynomial() {
            return Self::from_poly(self.num.add(&o.num));
        }
        if self.den == o.den {
            return Self::normalize(self.num.add(&o.num), self.den.clone());
        }
        Self::normalize(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_polynomial() && o.is_polynomial() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        // Cancel across before multiplying so the final gcd works on smaller inputs.
        let (a, d) = Self::cancel(&self.num, &o.den);
        let (b, c) = Self::cancel(&o.num, &self.den);
        Self::normalize(a.mul(&b), c.mul(&d))
    }

    fn cancel(num: &QPoly, den: &QPoly) -> (QPoly, QPoly) {
        if den.degree() == Some(0) || num.degree().is_none_or(|d| d == 0) {
            return (num.clone(), den.clone());
        }
        let g = num.gcd(den);
        if g.degree() == Some(0) {
            (num.clone(), den.clone())
        } else {
            (num.div_rem(&g).unwrap().0, den.div_rem(&g).unwrap().0)
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::normalize(self.num.scale(c), self.den.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible("zero rational function".into()));
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        Ok(RationalFn { num: base.num.pow(e), den: base.den.pow(e) })
    }

    /// `f(s + n)`.
    pub fn shift(&self, n: i64) -> Self {
        if n == 0 {
            return self.clone();
        }
        let n = rat(n);
        if self.is_polynomial() {
            return Self::from_poly(self.num.shift(&n));
        }
        // Shifting is a field automorphism, so lowest terms are preserved.
        let (num, den) = (self.num.shift(&n), self.den.shift(&n));
        RationalFn { num, den }
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleProximity(format!("pole at s = {x}")));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.num.eval_complex(z) / self.den.eval_complex(z)
    }

    pub fn format_in(&self, var: &str) -> String {
        let n = self.num.format_in(var);
        if self.is_polynomial() {
            return n;
        }
        format!("({n})/({})", self.den.format_in(var))
    }

    pub fn to_json(&self) -> Value {
        json!({ "num": self.num.to_strings(), "den": self.den.to_strings() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse("malformed rational function JSON".into());
        let num = QPoly::from_strings(v.get("num").ok_or_else(bad)?)?;
        let den = QPoly::from_strings(v.get("den").ok_or_else(bad)?)?;
        Self::new(num, den)
    }
}

impl DifferenceRing for RationalFn {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn int_like(&self, n: i64) -> Self {
        Self::from_int(n)
    }
    fn is_zero(&self) -> bool {
        RationalFn::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RationalFn::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RationalFn::sub(self, other)
    }
    fn neg(&self) -> Self {
        RationalFn::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        RationalFn::mul(self, other)
    }
    fn tau(&self, n: u32) -> Self {
        self.shift(n as i64)
    }
    fn to_json(&self) -> Value {
        RationalFn::to_json(self)
    }
    fn agrees_with(&self, other: &Self) -> bool {
        self == other
    }
}

impl DifferenceField for RationalFn {
    fn div(&self, other: &Self) -> Result<Self> {
        RationalFn::div(self, other)
    }
}

impl InversiveRing for RationalFn {
    fn tau_inv(&self, n: u32) -> Self {
        self.shift(-(n as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s() -> RationalFn {
        RationalFn::var()
    }

    #[test]
    fn shift_examples() {
        assert_eq!(s().shift(1), s().add(&RationalFn::one()));
        let f = s().mul(&s()).add(&RationalFn::from_int(3)).div(&s()).unwrap();
        assert_eq!(f.shift(0), f);
        let inv = s().inv().unwrap();
        assert_eq!(inv.shift(2), s().add(&RationalFn::from_int(2)).inv().unwrap());
    }

    #[test]
    fn canonical_form() {
        // (s^2 - 1)/(2s - 2) = (s + 1)/2
        let f = RationalFn::new(QPoly::from_ints(&[-1, 0, 1]), QPoly::from_ints(&[-2, 2])).unwrap();
        assert!(f.is_polynomial());
        assert_eq!(f, RationalFn::from_poly(QPoly::from_ints(&[1, 1])).scale(&BigRational::new(1.into(), 2.into())));
        // (s^2+s)/(s^2+3s+2) = s/(s+2)
        let g = RationalFn::new(QPoly::from_ints(&[0, 1, 1]), QPoly::from_ints(&[2, 3, 1])).unwrap();
        assert_eq!(g.den(), &QPoly::from_ints(&[2, 1]));
        assert_eq!(g.num(), &QPoly::from_ints(&[0, 1]));
    }

    #[test]
    fn json_roundtrip_and_format() {
        let f = RationalFn::new(QPoly::from_ints(&[1, -3]), QPoly::from_ints(&[0, 2, 4])).unwrap();
        assert_eq!(RationalFn::from_json(&f.to_json()).unwrap(), f);
        assert_eq!(s().mul(&s()).sub(&RationalFn::from_int(1)).to_string(), "s^2 - 1");
    }

    #[test]
    fn eval_rejects_poles() {
        let f = s().inv().unwrap();
        assert!(f.eval(&BigRational::zero()).is_err());
        assert_eq!(f.eval(&rat(4)).unwrap(), BigRational::new(1.into(), 4.into()));
    }
}
