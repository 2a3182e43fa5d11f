use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// `c_0 + c_1 v + … + c_{K-1} v^{K-1}` in a named variable.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedTaylor {
    pub var: String,
    pub coeffs: Vec<Complex64>,
}

impl TruncatedTaylor {
    pub fn new(var: impl Into<String>, coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "need at least one coefficient");
        TruncatedTaylor { var: var.into(), coeffs }
    }

    /// Builds `Σ_{k<K} f(k) v^k`.
    pub fn from_fn(var: impl Into<String>, order: usize, f: impl FnMut(usize) -> Result<Complex64>) -> Result<Self> {
        Ok(Self::new(var, (0..order).map(f).collect::<Result<_>>()?))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let k = self.order().min(o.order());
        let mut c = vec![Complex64::new(0.0, 0.0); k];
        for (i, a) in self.coeffs.iter().enumerate().take(k) {
            for (j, b) in o.coeffs.iter().enumerate().take(k - i) {
                c[i + j] += a * b;
            }
        }
        Self::new(self.var.clone(), c)
    }

    pub fn eval(&self, v: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * v + c)
    }

    /// Geometric bound `|c_{K-1} v^{K-1}| r/(1-r)` with `r` the ratio of the last two terms.
    /// Fails when the terms are not decreasing there.
    pub fn tail_estimate(&self, v: Complex64) -> Result<f64> {
        let k = self.order();
        if k < 2 {
            return Err(Error::InsufficientLength { needed: 2, have: k });
        }
        let last = (self.coeffs[k - 1] * v.powi(k as i32 - 1)).norm();
        let prev = (self.coeffs[k - 2] * v.powi(k as i32 - 2)).norm();
        if last == 0.0 {
            return Ok(0.0);
        }
        let r = last / prev;
        if r.is_nan() || r >= 1.0 {
            return Err(Error::Domain(format!("terms in {} not decreasing (ratio {r:.3})", self.var)));
        }
        Ok(last * r / (1.0 - r))
    }

    pub fn to_json(&self) -> Value {
        json!({ "var": self.var, "coeffs": self.coeffs.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv_factorial(k: usize) -> f64 {
        (1..=k).map(|j| 1.0 / j as f64).product()
    }

    #[test]
    fn exponential_series() {
        let e = TruncatedTaylor::from_fn("x", 20, |k| Ok(Complex64::new(inv_factorial(k), 0.0))).unwrap();
        let e_neg =
            TruncatedTaylor::from_fn("x", 20, |k| Ok(Complex64::new((-1f64).powi(k as i32) * inv_factorial(k), 0.0))).unwrap();
        let x = Complex64::new(0.5, 0.0);
        assert!((e.eval(x) - x.exp()).norm() < 1e-15);
        assert!((e.mul(&e_neg).eval(x) - 1.0).norm() < 1e-14);
        assert!(e.tail_estimate(x).unwrap() < 1e-17);
    }
}
