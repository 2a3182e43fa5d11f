use serde_json::json;

use super::{carlitz_exp, pi_tilde, rel_achieved, theta_context};
use crate::error::Result;
use crate::field::{DifferenceRing, FieldTower, LaurentSeries, RadicalScaled, EXACT};
use crate::report::{CheckRecord, SuiteReport};
use crate::skew::SkewOperator;

/// With `x = exp(π̃/θ²)` a `θ²`-torsion point, `φ(θ²)` is right divisible by the first
/// order operator `τ - τ(x)/x` that kills `x`.
pub fn torsion_right_division(q: u64, u_prec: i64) -> Result<SuiteReport> {
    let margin = 16;
    let tower = FieldTower::new(q, 1, u_prec + margin)?;
    let theta = LaurentSeries::theta(&tower);
    let theta2 = theta.square();
    let pi = pi_tilde(&tower, u_prec + margin)?;
    let x = carlitz_exp(&pi.div_body(&theta2)?, u_prec + 8)?.value;
    let ctx = theta_context(&tower, 4);
    let op = ctx.phi(&theta2, 3)?;

    let mut rep = SuiteReport::new("torsion-division", json!({ "q": q, "u_prec": u_prec }));
    rep.push(CheckRecord::from_bool("phi(theta^2) is a polynomial of degree 2", op.is_polynomial() && op.degree() == Some(2)));

    let mut scale = EXACT;
    let mut image = x.zero_like();
    let mut tx = x.clone();
    for (j, c) in op.coeffs().iter().enumerate() {
        if j > 0 {
            tx = tx.tau(1);
        }
        let term = tx.mul_body(c);
        if let Some(v) = term.body().order() {
            scale = scale.min(v);
        }
        image = image.add(&term);
    }
    rep.push(
        CheckRecord::from_mismatch("phi(theta^2)(x) = 0", image.body().order())
            .precision(rel_achieved(image.body(), scale), u_prec),
    );
    let image1 = ctx.phi(&theta, 2)?.apply_in(&x, |c| RadicalScaled::from_body(c.clone()));
    rep.push(CheckRecord::from_bool("phi(theta)(x) != 0", image1.body().order().is_some()));

    let ratio = x.tau(1).div(&x)?;
    rep.push(CheckRecord::from_bool("tau(x)/x is radical-free", ratio.rho_deg() == 0));
    let m = SkewOperator::poly(vec![ratio.body().neg(), LaurentSeries::one(&tower)], 1);
    let (quot, rem) = op.right_divide(&m)?;
    let r0 = rem.coeff(0).cloned().unwrap_or_else(|| LaurentSeries::zero(&tower));
    rep.push(
        CheckRecord::from_mismatch("remainder of phi(theta^2) by (tau - tau(x)/x) vanishes", r0.order())
            .precision(rel_achieved(&r0, theta2.val()), u_prec),
    );
    let rebuilt = quot.skew_mul(&m).add(&rem);
    rep.push(CheckRecord::from_mismatch(
        "Q (tau - tau(x)/x) + R = phi(theta^2)",
        rebuilt.first_mismatch(&op).map(|i| i as i64),
    ));
    rep.record("quotient", quot.to_json());
    rep.record("x", x.to_json());
    Ok(rep)
}
