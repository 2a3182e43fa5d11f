//! The Frobenius backend in depth: the period `π̃`, the exponential as an evaluator,
//! the function `ω` and its relations, Gauss–Thakur sums and Pellarin's L-series.
//!
//! Throughout, `ρ` is the tower's radical with `ρ^{q-1} = -θ` and every value that
//! involves it is stored as a [`RadicalScaled`].

mod gauss;
mod lseries;
mod omega;
mod torsion;

pub use gauss::{gauss_thakur_sum, kummer_radical_check, roots_in_extension};
pub use lseries::{l_series, pellarin_identity, zeta_specialization, LSeries};
pub use omega::{
    cyclotomic_relation, multiplication_relation, omega_body, omega_eigen_check, omega_product, omega_three_ways,
    OmegaBundle,
};
pub use torsion::torsion_right_division;

use std::sync::Arc;

use crate::carlitz::{CarlitzContext, Convention};
use crate::error::{Error, Result};
use crate::field::{FieldTower, LaurentSeries, RadicalScaled, EXACT};

/// `CarlitzContext` for `ϑ = θ` with the Frobenius and the `φ(θ) = θ + τ` signs.
pub fn theta_context(tower: &Arc<FieldTower>, bound: usize) -> CarlitzContext<LaurentSeries> {
    CarlitzContext::new(LaurentSeries::theta(tower), Convention::New, 1, bound)
}

/// `d_i(θ) = Π_{j<i} (θ^{q^i} - θ^{q^j})` built from powers of `θ`.
pub fn d_coeff(tower: &Arc<FieldTower>, i: u32) -> LaurentSeries {
    let q = tower.q() as i64;
    let top = LaurentSeries::theta_pow(tower, q.pow(i));
    (0..i).fold(LaurentSeries::one(tower), |acc, j| acc.mul(&top.sub(&LaurentSeries::theta_pow(tower, q.pow(j)))))
}

/// Body of `π̃_{τ^n,ϑ} = ϑ (-ϑ)^{1/(Q-1)} Π_{i≥1} (1 - ϑ^{1-Q^i})^{-1}` with `Q = q^n`,
/// known to relative precision `u_prec`.
pub fn pi_tilde_body(theta: &LaurentSeries, tau_power: u32, u_prec: i64) -> Result<LaurentSeries> {
    let tower = theta.tower();
    let deg = match theta.order() {
        Some(v) if v < 0 => -v,
        _ => return Err(Error::Domain("the period needs |ϑ| > 1".into())),
    };
    let big_q = tower.q().pow(tau_power) as i64;
    let one = LaurentSeries::one(tower);
    let mut body = theta.clone();
    let mut qi = big_q;
    while (qi - 1) * deg < u_prec {
        let w = theta.div(&theta.pow(qi as u64))?;
        body = body.mul(&one.sub(&w).inverse()?);
        qi *= big_q;
    }
    Ok(body.truncate(theta.val() + u_prec))
}

/// `π̃` for `ϑ = θ`: `ρ` times a body in `F_q((u))` with leading term `θ`.
pub fn pi_tilde(tower: &Arc<FieldTower>, u_prec: i64) -> Result<RadicalScaled> {
    Ok(RadicalScaled::new(1, pi_tilde_body(&LaurentSeries::theta(tower), 1, u_prec)?))
}

/// A value of the exponential with the valuation of its largest term.
#[derive(Clone, Debug)]
pub struct ExpValue {
    pub value: RadicalScaled,
    /// Least body valuation among the summands `z^{q^i}/d_i`.
    pub scale: i64,
    pub terms: usize,
}

impl ExpValue {
    /// Known digits below the largest summand.
    pub fn rel_prec(&self) -> i64 {
        self.value.body().prec().min(EXACT) - self.scale
    }
}

/// Last index `I` with `z^{q^I}/d_I` within `u_prec` of the largest summand, and the
/// body valuation of that largest summand. Uses the exact valuations `v(d_i) = -i q^i`.
pub(crate) fn exp_cutoff(z: &RadicalScaled, u_prec: i64) -> (u32, i64) {
    let q = z.q() as i64;
    let v = z.body().val();
    let e = z.rho_deg() as i64;
    // ρ^{e q^i} folds (e q^i - e)/(q-1) factors of -θ into the body.
    let term_val = |i: u32| -> i64 {
        let qi = q.pow(i);
        qi * v - e * (qi - 1) / (q - 1) + i as i64 * qi
    };
    let mut i_max = 0u32;
    let mut scale = term_val(0);
    loop {
        let next = term_val(i_max + 1);
        let growing = (v + i_max as i64 + 1) * (q - 1) > e;
        if growing && next >= scale + u_prec {
            return (i_max, scale);
        }
        scale = scale.min(next);
        i_max += 1;
    }
}

/// `exp(z) = Σ z^{q^i}/d_i(θ)`, summed until the terms fall `u_prec` below the largest one.
pub fn carlitz_exp(z: &RadicalScaled, u_prec: i64) -> Result<ExpValue> {
    let tower = z.body().tower().clone();
    if z.is_zero() && z.body().is_exact() {
        return Ok(ExpValue { value: z.clone(), scale: EXACT, terms: 0 });
    }
    let (i_max, scale) = exp_cutoff(z, u_prec);
    let mut acc = RadicalScaled::new(z.rho_deg(), LaurentSeries::zero(&tower));
    for i in 0..=i_max {
        acc = acc.add(&z.frobenius(i).div_body(&d_coeff(&tower, i))?);
    }
    let target = scale + u_prec;
    let value = if acc.body().prec() > target { acc.truncate(target) } else { acc };
    Ok(ExpValue { value, scale, terms: i_max as usize + 1 })
}

/// Least valuation of `diff` above `scale`, `EXACT` when the difference is exact zero.
pub(crate) fn rel_achieved(diff: &LaurentSeries, scale: i64) -> i64 {
    if diff.is_exact() {
        if diff.is_zero() {
            EXACT
        } else {
            diff.val() - scale
        }
    } else {
        diff.val() - scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DifferenceRing;

    #[test]
    fn period_shape() {
        for q in [2, 3, 4] {
            let t = FieldTower::new(q, 1, 80).unwrap();
            let p = pi_tilde(&t, 40).unwrap();
            let qm1 = q as i64 - 1;
            assert_eq!(p.valuation(), Some(num_rational::Ratio::new(-qm1 - 1, qm1)));
            assert!(p.body().terms().iter().all(|&(_, c)| t.is_in_subfield(c)));
            assert!(p.body().prec() - p.body().val() >= 40);
        }
    }

    #[test]
    fn dropped_factor_only_touches_high_exponents() {
        let t = FieldTower::new(3, 1, 80).unwrap();
        let th = LaurentSeries::theta(&t);
        let full = pi_tilde_body(&th, 1, 60).unwrap();
        let one = LaurentSeries::one(&t);
        let one_factor = th.mul(&one.sub(&LaurentSeries::monomial(&t, t.int(1), 2)).inverse().unwrap());
        assert_eq!(pi_tilde_body(&th, 1, 8).unwrap().first_mismatch(&one_factor), None);
        assert_eq!(full.first_mismatch(&one_factor), Some(7));
    }

    #[test]
    fn exp_kills_the_period() {
        for q in [2, 3, 4] {
            let t = FieldTower::new(q, 1, 100).unwrap();
            let p = pi_tilde(&t, 80).unwrap();
            let e = carlitz_exp(&p, 60).unwrap();
            assert!(e.value.is_zero(), "q={q}: {:?}", e.value);
            assert!(e.rel_prec() >= 60);
            let zero = carlitz_exp(&p.zero_like(), 60).unwrap();
            assert!(zero.value.is_zero());
        }
    }

    #[test]
    fn d_coeff_matches_recursion() {
        use crate::carlitz::exp_log_coeffs;
        let t = FieldTower::new(2, 1, 40).unwrap();
        let ctx = theta_context(&t, 5);
        let rec = exp_log_coeffs(&ctx, 5).unwrap();
        for i in 0..=5 {
            assert_eq!(rec.d[i as usize], d_coeff(&t, i));
        }
    }
}
