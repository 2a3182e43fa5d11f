//! The generalized Carlitz module `φ` attached to a difference ring and a chosen
//! element `ϑ`, built from the higher derivations `E_k`.

mod casoratian;
mod coherent;
mod explog;
mod shift;
mod theta;

pub use casoratian::{casoratian, Casoratian};
pub use coherent::{akhiezer_baker_check, check_coherent, CoherentSequence};
pub use explog::{
    closed_form_d, closed_form_l, exp_log_coeffs, exp_log_identities, exp_operator, log_operator, ExpLogCoeffs,
};
pub use shift::{phi_inverse_s, rising_factorial, PochhammerRow};
pub use theta::{jacobi_theta_checks, theta_coefficient, theta_sequence};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::DifferenceField;
use crate::skew::SkewOperator;

/// Sign convention for the coefficients of `φ(z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `φ(z) = Σ (-1)^k E_k(z) τ^k`, so `φ(ϑ) = ϑ - τ`.
    Old,
    /// `φ(z) = Σ E_k(z) τ^k`, so `φ(ϑ) = ϑ + τ`.
    New,
}

impl Convention {
    /// `+1` or `-1` multiplying `E_k` in `φ`.
    pub fn sign(self, k: usize) -> i64 {
        match self {
            Convention::Old if k % 2 == 1 => -1,
            _ => 1,
        }
    }
}

/// `(R, τ^n, ϑ)` with the iterates `τ^{nk}(ϑ)` cached up to a declared bound.
#[derive(Clone, Debug)]
pub struct CarlitzContext<R> {
    theta: R,
    convention: Convention,
    tau_power: u32,
    tau_theta: Vec<R>,
}

impl<R: DifferenceField> CarlitzContext<R> {
    pub fn new(theta: R, convention: Convention, tau_power: u32, bound: usize) -> Self {
        assert!(tau_power >= 1);
        let mut tau_theta = Vec::with_capacity(bound + 1);
        tau_theta.push(theta.clone());
        for _ in 0..bound {
            let next = tau_theta.last().unwrap().tau(tau_power);
            tau_theta.push(next);
        }
        CarlitzContext { theta, convention, tau_power, tau_theta }
    }

    pub fn theta(&self) -> &R {
        &self.theta
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn tau_power(&self) -> u32 {
        self.tau_power
    }

    pub fn bound(&self) -> usize {
        self.tau_theta.len() - 1
    }

    /// `τ^{nk}(ϑ)`.
    pub fn tau_theta(&self, k: usize) -> R {
        match self.tau_theta.get(k) {
            Some(x) => x.clone(),
            None => self.theta.tau(self.tau_power * k as u32),
        }
    }

    /// `τ^{nk}(ϑ) - ϑ`, rejecting a vanishing difference.
    pub fn gap(&self, k: usize) -> Result<R> {
        let g = self.tau_theta(k).sub(&self.theta);
        if g.is_zero() {
            return Err(Error::PeriodicTheta { index: k });
        }
        Ok(g)
    }

    /// `E_0(z), …, E_kmax(z)`.
    pub fn derivations(&self, z: &R, kmax: usize) -> Result<Vec<R>> {
        let mut out = Vec::with_capacity(kmax + 1);
        out.push(z.clone());
        for k in 1..=kmax {
            let prev = &out[k - 1];
            let next = prev.tau(self.tau_power).sub(prev).div(&self.gap(k)?)?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn higher_derivation(&self, z: &R, k: usize) -> Result<R> {
        Ok(self.derivations(z, k)?.pop().unwrap())
    }

    fn signed(&self, e: &R, k: usize) -> R {
        if self.convention.sign(k) < 0 {
            e.neg()
        } else {
            e.clone()
        }
    }

    /// `φ(z)`. When some `E_k(z)` with `k ≤ order + 1` vanishes exactly the result is the
    /// exact polynomial operator; otherwise a series truncated at `τ^order`.
    pub fn phi(&self, z: &R, order: usize) -> Result<SkewOperator<R>> {
        let lookahead = if z.is_exact() { order + 1 } else { order };
        let mut es = vec![z.clone()];
        for k in 1..=lookahead {
            let prev = &es[k - 1];
            if prev.is_zero() && prev.is_exact() {
                break;
            }
            let next = prev.tau(self.tau_power).sub(prev).div(&self.gap(k)?)?;
            es.push(next);
        }
        if let Some(stop) = es.iter().position(|e| e.is_zero() && e.is_exact()) {
            let coeffs: Vec<R> = es[..stop.max(1)].iter().enumerate().map(|(k, e)| self.signed(e, k)).collect();
            return Ok(SkewOperator::poly(coeffs, self.tau_power));
        }
        let coeffs = es.iter().take(order + 1).enumerate().map(|(k, e)| self.signed(e, k)).collect();
        Ok(SkewOperator::series(coeffs, self.tau_power, order))
    }

    /// `ϑ ∓ τ`.
    pub fn phi_theta(&self) -> SkewOperator<R> {
        let one = self.theta.one_like();
        let c1 = if self.convention.sign(1) < 0 { one.neg() } else { one };
        SkewOperator::poly(vec![self.theta.clone(), c1], self.tau_power)
    }

    /// First `k ≤ kmax` where `E_k(xy) ≠ Σ_{i+j=k} E_i(x) τ^{ni}(E_j(y))`.
    pub fn leibniz_check(&self, x: &R, y: &R, kmax: usize) -> Result<Option<usize>> {
        let exy = self.derivations(&x.mul(y), kmax)?;
        let ex = self.derivations(x, kmax)?;
        let ey = self.derivations(y, kmax)?;
        for k in 0..=kmax {
            let mut rhs = x.zero_like();
            for i in 0..=k {
                rhs = rhs.add(&ex[i].mul(&ey[k - i].tau(self.tau_power * i as u32)));
            }
            if !exy[k].agrees_with(&rhs) {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldTower, LaurentSeries, RationalFn};

    fn s() -> RationalFn {
        RationalFn::var()
    }

    fn poly(c: &[i64]) -> RationalFn {
        RationalFn::from_poly(crate::field::QPoly::from_ints(c))
    }

    #[test]
    fn e1_examples_over_shift() {
        let ctx = CarlitzContext::new(s(), Convention::Old, 1, 8);
        assert_eq!(ctx.higher_derivation(&s().mul(&s()), 1).unwrap(), poly(&[1, 2]));
        assert!(ctx.higher_derivation(&RationalFn::from_int(7), 1).unwrap().is_zero());
        let e1 = ctx.higher_derivation(&s().inv().unwrap(), 1).unwrap();
        assert_eq!(e1, s().mul(&s().shift(1)).inv().unwrap().neg());
    }

    #[test]
    fn phi_tables_old_convention() {
        let ctx = CarlitzContext::new(s(), Convention::Old, 1, 8);
        let p2 = ctx.phi(&s().mul(&s()), 6).unwrap();
        assert!(p2.is_polynomial());
        assert_eq!(p2.coeffs(), &[poly(&[0, 0, 1]), poly(&[-1, -2]), poly(&[1])]);
        let p3 = ctx.phi(&s().pow(3).unwrap(), 6).unwrap();
        assert_eq!(p3.coeffs(), &[poly(&[0, 0, 0, 1]), poly(&[-1, -3, -3]), poly(&[3, 3]), poly(&[-1])]);
        let pt = ctx.phi(&s(), 4).unwrap();
        assert_eq!(pt.first_mismatch(&ctx.phi_theta()), None);
    }

    #[test]
    fn phi_theta_new_convention() {
        let t = FieldTower::new(3, 1, 40).unwrap();
        let th = LaurentSeries::theta(&t);
        let ctx = CarlitzContext::new(th.clone(), Convention::New, 1, 6);
        let p = ctx.phi(&th, 5).unwrap();
        assert_eq!(p.coeffs(), &[th, LaurentSeries::one(&t)]);
    }

    #[test]
    fn periodic_theta_detected() {
        let t = FieldTower::new(3, 2, 40).unwrap();
        let c = LaurentSeries::constant(&t, t.ext().primitive());
        let ctx = CarlitzContext::new(c.clone(), Convention::New, 1, 4);
        assert!(matches!(ctx.derivations(&c, 3), Err(Error::PeriodicTheta { index: 2 })));
    }

    #[test]
    fn leibniz_small_cases() {
        let ctx = CarlitzContext::new(s(), Convention::Old, 1, 8);
        let x = s().inv().unwrap().add(&s());
        assert_eq!(ctx.leibniz_check(&s(), &s(), 3).unwrap(), None);
        assert_eq!(ctx.leibniz_check(&x, &RationalFn::one(), 4).unwrap(), None);
        assert_eq!(ctx.leibniz_check(&x, &s().mul(&s()), 4).unwrap(), None);
    }
}
