use std::sync::Arc;

use num_rational::Ratio;
use serde_json::json;

use super::{carlitz_exp, d_coeff, exp_cutoff, pi_tilde, rel_achieved, theta_context};
use crate::error::{Error, Result};
use crate::field::{DifferenceRing, FieldTower, FqElem, LaurentSeries, RadicalScaled, TSeries, EXACT};
use crate::par::{self, Exec};
use crate::report::{CheckRecord, SuiteReport};

/// Radical-free part of `ω_{τ^n,ϑ}` for `ϑ = c θ^e`, `c ∈ F_q^×`, together with the
/// exponent of `-θ` carried by its prefactor `(-ϑ)^{1/(q^n-1)}`.
#[derive(Clone, Debug)]
pub struct OmegaBundle {
    pub scale: FqElem,
    pub theta_power: u32,
    pub tau_power: u32,
    pub radical: Ratio<i64>,
    /// `Π_{j≥0} (1 - t/ϑ^{q^{nj}})^{-1}`.
    pub body: TSeries<LaurentSeries>,
}

/// Builds `Π_{j≥0} (1 - t/ϑ^{Q^j})^{-1}`, `Q = q^n`, as a `t`-series. Factors are kept while
/// they can move a coefficient within `u_prec` of its leading term; the coefficient of `t^k`
/// is then known below `e Q^{J+1} + (k-1) e` where `J` is the last factor kept.
pub fn omega_body(
    tower: &Arc<FieldTower>,
    scale: FqElem,
    theta_power: u32,
    tau_power: u32,
    t_prec: usize,
    u_prec: i64,
) -> Result<OmegaBundle> {
    let e = theta_power as i64;
    if e < 1 || scale.is_zero() || !tower.is_in_subfield(scale) {
        return Err(Error::Domain("ϑ must be c·θ^e with c in F_q^× and e ≥ 1".into()));
    }
    let big_q = tower.q().pow(tau_power) as i64;
    let c_inv = tower.inv(scale)?;
    let one = LaurentSeries::one(tower);
    let mut body = TSeries::constant(one.clone(), t_prec);
    let mut qj = 1i64;
    while e * (qj - 1) < u_prec {
        let geo: Vec<LaurentSeries> = (0..t_prec as i64)
            .map(|k| LaurentSeries::monomial(tower, tower.pow(c_inv, k as u64), k * e * qj))
            .collect();
        body = body.mul(&TSeries::new(geo, &one, t_prec));
        qj *= big_q;
    }
    let coeffs = body
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| if k == 0 { c.clone() } else { c.with_prec(e * qj + (k as i64 - 1) * e) })
        .collect();
    let qn = big_q - 1;
    Ok(OmegaBundle {
        scale,
        theta_power,
        tau_power,
        radical: Ratio::new(e, qn),
        body: TSeries::new(coeffs, &one, t_prec),
    })
}

/// `ω(t) = ρ Π_{i≥0} (1 - t/θ^{q^i})^{-1}` for `ϑ = θ`.
pub fn omega_product(tower: &Arc<FieldTower>, t_prec: usize, u_prec: i64) -> Result<TSeries<RadicalScaled>> {
    let b = omega_body(tower, tower.int(1), 1, 1, t_prec, u_prec)?;
    Ok(b.body.map(|c| RadicalScaled::new(1, c.clone())))
}

/// Coefficientwise `(first mismatch, least relative precision)` of two series whose `t^k`
/// coefficients have leading valuation `v_0 + k·slope`, with `v_0` read off `b`.
fn compare_bodies(a: &TSeries<LaurentSeries>, b: &TSeries<LaurentSeries>, slope: i64) -> (Option<i64>, i64) {
    let n = a.t_prec().min(b.t_prec());
    let base = b.coeff(0).order().unwrap_or(0);
    let mut achieved = EXACT;
    for k in 0..n {
        let scale = base + slope * k as i64;
        let d = a.coeff(k).sub(b.coeff(k));
        if d.order().is_some() {
            return (Some(k as i64), d.val() - scale);
        }
        achieved = achieved.min(rel_achieved(&d, scale));
    }
    (None, achieved)
}

fn body_record(name: &str, a: &TSeries<LaurentSeries>, b: &TSeries<LaurentSeries>, slope: i64, u_prec: i64) -> CheckRecord {
    let (mismatch, achieved) = compare_bodies(a, b, slope);
    CheckRecord::from_mismatch(name, mismatch).precision(achieved, u_prec)
}

fn radical_record(name: &str, a: &TSeries<RadicalScaled>, b: &TSeries<RadicalScaled>, slope: i64, u_prec: i64) -> CheckRecord {
    let degrees_match = (0..a.t_prec().min(b.t_prec()))
        .all(|k| a.coeff(k).is_zero() || b.coeff(k).is_zero() || a.coeff(k).rho_deg() == b.coeff(k).rho_deg());
    if !degrees_match {
        return CheckRecord::fail(name, "radical degrees differ");
    }
    let ab = a.map(|c| c.body().clone());
    let bb = b.map(|c| c.body().clone());
    body_record(name, &ab, &bb, slope, u_prec)
}

/// `ω` by the exponential of `π̃/(θ-t)`, by partial fractions over the poles `θ^{q^i}`,
/// and by the product, compared pairwise.
pub fn omega_three_ways(q: u64, t_prec: usize, u_prec: i64, exec: Exec) -> Result<SuiteReport> {
    let margin = 8 + t_prec as i64;
    let tower = FieldTower::new(q, 1, u_prec + margin)?;
    let pi = pi_tilde(&tower, u_prec + margin)?;
    let u = |k: i64| LaurentSeries::monomial(&tower, tower.int(1), k);
    let (i_max, _) = exp_cutoff(&pi.mul_body(&u(1)), u_prec);
    let rows: Vec<Result<Vec<RadicalScaled>>> = par::map_range(exec, 3, |which| match which {
        0 => (0..t_prec as i64).map(|k| Ok(carlitz_exp(&pi.mul_body(&u(k + 1)), u_prec)?.value)).collect(),
        1 => {
            let mut residues: Vec<RadicalScaled> =
                (0..=i_max + 1).map(|i| pi.frobenius(i).div_body(&d_coeff(&tower, i))).collect::<Result<_>>()?;
            // The first dropped pole bounds what the truncated sum knows.
            let dropped = residues.pop().unwrap();
            Ok((0..t_prec as i64)
                .map(|k| {
                    let term = |i: usize, r: &RadicalScaled| r.mul_body(&u(q.pow(i as u32) as i64 * (k + 1)));
                    let sum = residues.iter().enumerate().fold(pi.zero_like(), |acc, (i, r)| acc.add(&term(i, r)));
                    sum.truncate(term(i_max as usize + 1, &dropped).body().val())
                })
                .collect())
        }
        _ => Ok(omega_product(&tower, t_prec, u_prec + margin)?.coeffs().to_vec()),
    });
    let mut rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let product = TSeries::new(rows.pop().unwrap(), &pi, t_prec);
    let partial = TSeries::new(rows.pop().unwrap(), &pi, t_prec);
    let exp_form = TSeries::new(rows.pop().unwrap(), &pi, t_prec);

    let mut rep = SuiteReport::new("omega-three-ways", json!({ "q": q, "t_prec": t_prec, "u_prec": u_prec }));
    rep.push(radical_record("exp form = product form", &exp_form, &product, 1, u_prec));
    rep.push(radical_record("partial fractions = product form", &partial, &product, 1, u_prec));
    rep.push(radical_record("exp form = partial fractions", &exp_form, &partial, 1, u_prec));
    let b0 = omega_body(&tower, tower.int(1), 1, 1, 1, u_prec)?.body;
    rep.push(CheckRecord::from_bool("product body constant term is 1", *b0.coeff(0) == LaurentSeries::one(&tower)));
    let x1 = carlitz_exp(&pi.mul_body(&u(1)), u_prec)?.value;
    rep.push(radical_record(
        "t^0 coefficient = exp(pi/theta)",
        &TSeries::new(vec![x1], &pi, 1),
        &product.truncate(1),
        1,
        u_prec,
    ));
    rep.record("omega_t0", product.coeff(0).to_json());
    rep.record("pi_tilde", pi.to_json());
    Ok(rep)
}

/// The body identity `τ(B) = (1 - t/θ) B` and `φ(a) ω = a(t) ω` for each polynomial `a`
/// (coefficients in `F_q`, low degree first).
pub fn omega_eigen_check(q: u64, polys: &[Vec<FqElem>], t_prec: usize, u_prec: i64, exec: Exec) -> Result<SuiteReport> {
    let margin = 8;
    let tower = FieldTower::new(q, 1, u_prec + margin)?;
    let bundle = omega_body(&tower, tower.int(1), 1, 1, t_prec, u_prec + margin)?;
    let b = &bundle.body;
    let one = LaurentSeries::one(&tower);
    let factor = TSeries::new(vec![one.clone(), LaurentSeries::monomial(&tower, tower.int(-1), 1)], &one, t_prec);
    let mut rep = SuiteReport::new("omega-eigen", json!({ "q": q, "t_prec": t_prec, "u_prec": u_prec }));
    rep.push(body_record("tau(B) = (1 - t/theta) B", &b.tau(1), &b.mul(&factor), 1, u_prec));

    let omega = b.map(|c| RadicalScaled::new(1, c.clone()));
    let ctx = theta_context(&tower, 8);
    let records = par::map(exec, polys, |a| -> Result<CheckRecord> {
        let a_theta = LaurentSeries::from_theta_poly(&tower, a);
        let op = ctx.phi(&a_theta, a.len())?;
        // Per t-coefficient, the least body valuation among all summands on either side.
        let mut scale = vec![EXACT; t_prec];
        let mut note = |s: &TSeries<RadicalScaled>| {
            for (k, c) in s.coeffs().iter().enumerate() {
                if let Some(v) = c.body().order() {
                    scale[k] = scale[k].min(v);
                }
            }
        };
        let mut lhs = omega.zero_like();
        let mut tw = omega.clone();
        for (j, c) in op.coeffs().iter().enumerate() {
            if j > 0 {
                tw = tw.tau(1);
            }
            let term = tw.scale(&RadicalScaled::from_body(c.clone()));
            note(&term);
            lhs = lhs.add(&term);
        }
        let mut rhs = omega.zero_like();
        for (i, &c) in a.iter().enumerate() {
            let term = omega.shift_t(i).scale(&RadicalScaled::from_body(LaurentSeries::constant(&tower, c)));
            note(&term);
            rhs = rhs.add(&term);
        }
        let name = format!("phi(a) omega = a(t) omega, a = {}", format_poly(&tower, a));
        let mut achieved = EXACT;
        let mut mismatch = None;
        for (k, &sk) in scale.iter().enumerate() {
            let d = lhs.coeff(k).body().sub(rhs.coeff(k).body());
            if d.order().is_some() {
                mismatch = Some(k as i64);
                break;
            }
            if sk < EXACT {
                achieved = achieved.min(rel_achieved(&d, sk));
            }
        }
        Ok(CheckRecord::from_mismatch(name, mismatch).precision(achieved, u_prec))
    });
    for r in records {
        rep.push(r?);
    }
    Ok(rep)
}

pub(crate) fn format_poly(tower: &FieldTower, a: &[FqElem]) -> String {
    let terms: Vec<String> = a
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, &c)| {
            let cs = tower.format(c);
            match (i, cs.as_str()) {
                (0, _) => cs,
                (1, "1") => "theta".into(),
                (1, _) => format!("{cs}*theta"),
                (_, "1") => format!("theta^{i}"),
                _ => format!("{cs}*theta^{i}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// `ω_{τ,θ}(t) = Π_{i<n} τ^i ω_{τ^n,θ}(t)` on bodies, plus the radical exponent identity
/// `Σ_{i<n} q^i/(q^n - 1) = 1/(q - 1)`.
pub fn multiplication_relation(q: u64, n: u32, t_prec: usize, u_prec: i64) -> Result<SuiteReport> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let tower = FieldTower::new(q, 1, u_prec)?;
    let one_c = tower.int(1);
    let base = omega_body(&tower, one_c, 1, 1, t_prec, u_prec)?;
    let twisted = omega_body(&tower, one_c, 1, n, t_prec, u_prec)?;
    let product = (1..n).fold(twisted.body.clone(), |acc, i| acc.mul(&twisted.body.tau(i)));
    let mut rep = SuiteReport::new("multiplication", json!({ "q": q, "n": n, "t_prec": t_prec, "u_prec": u_prec }));
    rep.push(body_record("omega body = prod tau^i omega_n body", &base.body, &product, 1, u_prec));
    let qi = q as i64;
    let lhs: Ratio<i64> = (0..n).map(|i| twisted.radical * qi.pow(i)).sum();
    rep.push(
        CheckRecord::from_bool("radical exponents: sum q^i/(q^n-1) = 1/(q-1)", lhs == base.radical)
            .detail(format!("{lhs} vs {}", base.radical)),
    );
    Ok(rep)
}

/// `ω_{τ,θ^n}(t^n) = Π_{i<n} ω_{τ,ζ^iθ}(t)` on bodies, with `ζ` of order `n` in `F_q`. The
/// prefactors differ by a constant `μ` with `μ^{q-1} = Π_i(-ζ^i) / (-1)`, which is reported.
pub fn cyclotomic_relation(q: u64, n: u32, t_prec: usize, u_prec: i64) -> Result<SuiteReport> {
    let tower = FieldTower::new(q, 1, u_prec)?;
    let zeta = *tower.roots_of_unity(n as u64).first().ok_or(Error::NoRootOfUnity { order: n as u64, q })?;
    let lhs = omega_body(&tower, tower.int(1), n, 1, t_prec, u_prec)?.body.substitute_power(n as usize);
    let mut rhs: Option<TSeries<LaurentSeries>> = None;
    let mut radical = Ratio::from_integer(0);
    let mut prefactor = tower.int(1);
    for i in 0..n {
        let zi = tower.pow(zeta, i as u64);
        let b = omega_body(&tower, zi, 1, 1, t_prec, u_prec)?;
        radical += b.radical;
        prefactor = tower.mul(prefactor, tower.neg(zi));
        rhs = Some(match rhs {
            None => b.body,
            Some(r) => r.mul(&b.body),
        });
    }
    let mu_power = tower.mul(prefactor, tower.inv(tower.int(-1))?);
    let mut rep = SuiteReport::new("cyclotomic", json!({ "q": q, "n": n, "t_prec": t_prec, "u_prec": u_prec }));
    rep.push(body_record("omega_{theta^n}(t^n) body = prod omega_{zeta^i theta} body", &lhs, &rhs.unwrap(), 1, u_prec));
    let expected = Ratio::new(n as i64, q as i64 - 1);
    rep.push(CheckRecord::from_bool("radical exponents agree", radical == expected).detail(format!("{radical}")));
    let candidates: Vec<String> = tower
        .subfield()
        .iter()
        .filter(|&&x| !x.is_zero() && tower.pow(x, q - 1) == mu_power)
        .map(|&x| tower.format(x))
        .collect();
    rep.push(
        CheckRecord::from_bool("prefactor ratio mu^(q-1) = 1", mu_power == tower.int(1))
            .detail(format!("mu^(q-1) = {}; mu in {{{}}} depending on root choices", tower.format(mu_power), candidates.join(", "))),
    );
    rep.record("zeta", json!(tower.format(zeta)));
    rep.record("mu_power", json!(tower.format(mu_power)));
    rep.record("mu_candidates", json!(candidates));
    Ok(rep)
}
