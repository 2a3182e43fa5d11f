use std::sync::Arc;

use serde_json::json;

use super::omega::format_poly;
use super::{carlitz_exp, omega_product, pi_tilde, rel_achieved};
use crate::error::{Error, Result};
use crate::field::{FieldTower, FqElem, LaurentSeries, RadicalScaled, TSeries};
use crate::par::{self, Exec};
use crate::report::{CheckRecord, SuiteReport};

fn eval_poly(tower: &FieldTower, a: &[FqElem], x: FqElem) -> FqElem {
    a.iter().rev().fold(FqElem::ZERO, |acc, &c| tower.add(tower.mul(acc, x), c))
}

/// The `d = deg a` roots of `a` in `F_{q^d}` as one Frobenius orbit. Finding a root of exact
/// degree `d` over `F_q` certifies that `a` is irreducible.
pub fn roots_in_extension(tower: &FieldTower, a: &[FqElem]) -> Result<Vec<FqElem>> {
    let d = a.len().checked_sub(1).filter(|&d| d >= 1).ok_or(Error::NotIrreducible("constant polynomial".into()))?;
    if a.iter().any(|&c| !tower.is_in_subfield(c)) {
        return Err(Error::Domain("coefficients must lie in F_q".into()));
    }
    if tower.d() as usize != d {
        return Err(Error::Domain(format!("tower degree {} differs from deg a = {d}", tower.d())));
    }
    let root = tower
        .ext()
        .elements()
        .find(|&x| eval_poly(tower, a, x).is_zero() && tower.degree_over_base(x) as usize == d)
        .ok_or_else(|| Error::NotIrreducible(format_poly(tower, a)))?;
    Ok((0..d as u32).map(|j| tower.frob_q(root, j)).collect())
}

/// `ω(ξ)` by substituting `t = ξ` in the `t`-expansion. Returns the value and whether the
/// audited coefficient valuations grow at least linearly from that of `ω_0`, so that
/// dropping `t^{≥T}` costs nothing below `u^T` relative to the value.
fn omega_at(omega: &TSeries<RadicalScaled>, xi: FqElem) -> (RadicalScaled, bool) {
    let tower = omega.coeff(0).body().tower().clone();
    let base = omega.coeff(0).body().val();
    let t_prec = omega.t_prec() as i64;
    let audit = omega.coeffs().iter().enumerate().all(|(k, c)| c.body().val() - base >= k as i64);
    let x = RadicalScaled::from_body(LaurentSeries::constant(&tower, xi));
    let v = omega.eval(&x);
    (v.truncate(base + t_prec), audit)
}

fn omega_for(tower: &Arc<FieldTower>, u_prec: i64) -> Result<TSeries<RadicalScaled>> {
    omega_product(tower, u_prec as usize + 1, u_prec + 4)
}

/// `Σ_j ω(ξ_j) = exp(π̃ a'/a)` over the roots of the irreducible monic `a`.
pub fn gauss_thakur_sum(q: u64, a: &[FqElem], u_prec: i64, exec: Exec) -> Result<SuiteReport> {
    let d = a.len().saturating_sub(1) as u32;
    let tower = FieldTower::new(q, d.max(1), u_prec + 16)?;
    let a: Vec<FqElem> = a.iter().map(|&c| tower.embed(c)).collect();
    let roots = roots_in_extension(&tower, &a)?;
    let omega = omega_for(&tower, u_prec)?;
    let values = par::map(exec, &roots, |&xi| omega_at(&omega, xi));
    let mut lhs = RadicalScaled::new(1, LaurentSeries::zero(&tower));
    for (v, _) in &values {
        lhs = lhs.add(v);
    }
    let audit = values.iter().all(|(_, ok)| *ok);

    let a_series = LaurentSeries::from_theta_poly(&tower, &a);
    let deriv: Vec<FqElem> = a.iter().enumerate().skip(1).map(|(i, &c)| tower.mul(tower.int(i as i64), c)).collect();
    let deriv = LaurentSeries::from_theta_poly(&tower, &deriv);
    let pi = pi_tilde(&tower, u_prec + 16)?;
    let arg = pi.mul_body(&deriv.div(&a_series)?);
    let rhs = carlitz_exp(&arg, u_prec + 4)?.value;

    let mut rep = SuiteReport::new(
        "gauss-thakur",
        json!({ "q": q, "a": format_poly(&tower, &a), "u_prec": u_prec, "t_prec": omega.t_prec() }),
    );
    rep.push(CheckRecord::from_bool("t-tail audit: val(omega_k) - val(omega_0) >= k", audit));
    let power_sums_in_fq = (0..2 * tower.q()).all(|n| {
        let s = roots.iter().fold(FqElem::ZERO, |acc, &x| tower.add(acc, tower.pow(x, n)));
        tower.is_in_subfield(s)
    });
    rep.push(CheckRecord::from_bool("power sums of the roots lie in F_q", power_sums_in_fq));
    let same_degree = lhs.is_zero() || rhs.is_zero() || lhs.rho_deg() == rhs.rho_deg();
    let diff = lhs.body().sub(rhs.body());
    let scale = omega.coeff(0).body().val();
    let rec = CheckRecord::from_mismatch("sum omega(xi_j) = exp(pi a'/a)", diff.order())
        .precision(rel_achieved(&diff, scale), u_prec);
    rep.push(if same_degree { rec } else { CheckRecord::fail(rec.name, "radical degrees differ") });
    rep.record("roots", json!(roots.iter().map(|&x| tower.format(x)).collect::<Vec<_>>()));
    rep.record("lhs", lhs.to_json());
    Ok(rep)
}

/// `ω(ξ)^{q^d-1} = Π_{i<d} (ξ - θ^{q^i})` for `ξ` of exact degree `d`. The reading of the
/// product with an extra factor `ξ - θ^{q^d}` is evaluated too and reported as data.
pub fn kummer_radical_check(q: u64, d: u32, xi: Option<FqElem>, u_prec: i64) -> Result<SuiteReport> {
    let tower = FieldTower::new(q, d, u_prec + 16)?;
    let xi = match xi {
        Some(x) => x,
        None => tower
            .ext()
            .elements()
            .find(|&x| tower.degree_over_base(x) == d)
            .ok_or_else(|| Error::Domain(format!("no element of degree {d}")))?,
    };
    if tower.degree_over_base(xi) != d {
        return Err(Error::Domain(format!("{} does not have degree {d} over F_q", tower.format(xi))));
    }
    let omega = omega_for(&tower, u_prec)?;
    let (w, audit) = omega_at(&omega, xi);
    let big = tower.q().pow(d);
    let lhs = w.pow(big - 1);
    let xi_s = LaurentSeries::constant(&tower, xi);
    let factor = |i: u32| xi_s.sub(&LaurentSeries::theta_pow(&tower, tower.q().pow(i) as i64));
    let rhs = (0..d).fold(LaurentSeries::one(&tower), |acc, i| acc.mul(&factor(i)));
    let literal = rhs.mul(&factor(d));

    let mut rep = SuiteReport::new("kummer", json!({ "q": q, "d": d, "xi": tower.format(xi), "u_prec": u_prec }));
    rep.push(CheckRecord::from_bool("t-tail audit: val(omega_k) - val(omega_0) >= k", audit));
    rep.push(CheckRecord::from_bool("radical degree (q^d-1) = 0 mod (q-1)", lhs.rho_deg() == 0));
    let scale = rhs.val();
    let diff = lhs.body().sub(&rhs);
    rep.push(
        CheckRecord::from_mismatch("omega(xi)^(q^d-1) = prod_{i<d} (xi - theta^(q^i))", diff.order())
            .precision(rel_achieved(&diff, scale), u_prec),
    );
    let lit = lhs.body().sub(&literal);
    rep.record(
        "literal_with_factor_theta_q^d",
        json!({ "agrees": lit.is_zero(), "valuation_gap": lhs.body().val() - literal.val() }),
    );
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_theta_squared_plus_one_over_f3() {
        let t = FieldTower::new(3, 2, 40).unwrap();
        let a = [t.int(1), t.int(0), t.int(1)];
        let r = roots_in_extension(&t, &a).unwrap();
        assert_eq!(r.len(), 2);
        assert_ne!(r[0], r[1]);
        for x in r {
            assert_eq!(t.mul(x, x), t.int(-1));
        }
        let reducible = [t.int(-1), t.int(0), t.int(1)];
        assert!(matches!(roots_in_extension(&t, &reducible), Err(Error::NotIrreducible(_))));
    }

    #[test]
    fn degree_one_reduces_to_exp_formula() {
        let rep = gauss_thakur_sum(3, &[FqElem::ONE, FqElem::ONE], 20, Exec::Sequential).unwrap();
        assert!(rep.passed(), "{:?}", rep.checks);
    }

    #[test]
    fn kummer_degree_one() {
        let rep = kummer_radical_check(3, 1, None, 20).unwrap();
        assert!(rep.passed(), "{:?}", rep.checks);
    }
}
