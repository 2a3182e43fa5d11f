use std::sync::Arc;

use serde_json::json;

use super::{omega_product, pi_tilde, rel_achieved};
use crate::error::{Error, Result};
use crate::field::{DifferenceRing, FieldTower, FqElem, LaurentSeries, RadicalScaled, TSeries, EXACT};
use crate::par::{self, Exec};
use crate::report::{CheckRecord, SuiteReport};

const CHUNK: usize = 32;
const GATE_RUN: usize = 3;

/// `Σ_{a monic} a(t)^β / a^α` summed by degree of `a`.
#[derive(Clone, Debug)]
pub struct LSeries {
    pub alpha: u32,
    pub beta: u32,
    /// Per degree `d`, the `t`-coefficients of `Σ_{deg a = d} a(t)^β a^{-α}`.
    pub blocks: Vec<Vec<LaurentSeries>>,
    /// Least valuation over the coefficients of each block.
    pub block_vals: Vec<i64>,
    /// Whether the last few blocks all fell below the target before the degree cap.
    pub gate_passed: bool,
    /// Absolute `u`-precision of [`LSeries::value`].
    pub achieved: i64,
    pub value: TSeries<LaurentSeries>,
}

impl LSeries {
    pub fn deg_max(&self) -> usize {
        self.blocks.len() - 1
    }
}

/// Monic polynomial of degree `d` with lower coefficients given by the base-`q` digits of `idx`.
fn monic(tower: &FieldTower, d: u32, mut idx: u64) -> Vec<FqElem> {
    let q = tower.q();
    let mut a: Vec<FqElem> = (0..d)
        .map(|_| {
            let c = tower.subfield()[(idx % q) as usize];
            idx /= q;
            c
        })
        .collect();
    a.push(tower.int(1));
    a
}

/// `a(t)^β` truncated to `t_prec` coefficients.
fn poly_pow(tower: &FieldTower, a: &[FqElem], beta: u32, t_prec: usize) -> Vec<FqElem> {
    let mut acc = vec![FqElem::ZERO; t_prec];
    acc[0] = tower.int(1);
    for _ in 0..beta {
        let mut next = vec![FqElem::ZERO; t_prec];
        for (i, &x) in acc.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, &y) in a.iter().enumerate().take(t_prec - i) {
                next[i + j] = tower.add(next[i + j], tower.mul(x, y));
            }
        }
        acc = next;
    }
    acc
}

fn add_into(acc: &mut [LaurentSeries], xs: &[LaurentSeries]) {
    for (a, x) in acc.iter_mut().zip(xs) {
        *a = a.add(x);
    }
}

fn block(tower: &Arc<FieldTower>, d: u32, alpha: u32, beta: u32, t_prec: usize, exec: Exec) -> Result<Vec<LaurentSeries>> {
    let count = tower.q().pow(d);
    let chunks = count.div_ceil(CHUNK as u64) as usize;
    let zero = vec![LaurentSeries::zero(tower); t_prec];
    let partial = par::map_range(exec, chunks, |c| -> Result<Vec<LaurentSeries>> {
        let mut acc = zero.clone();
        let lo = (c * CHUNK) as u64;
        for idx in lo..(lo + CHUNK as u64).min(count) {
            let a = monic(tower, d, idx);
            let inv = LaurentSeries::from_theta_poly(tower, &a).pow(alpha as u64).inverse()?;
            let at = poly_pow(tower, &a, beta, t_prec);
            let terms: Vec<LaurentSeries> = at.iter().map(|&c| inv.scale(c)).collect();
            add_into(&mut acc, &terms);
        }
        Ok(acc)
    });
    let mut acc = zero;
    for p in partial {
        add_into(&mut acc, &p?);
    }
    Ok(acc)
}

fn block_val(b: &[LaurentSeries]) -> i64 {
    b.iter().map(|c| c.order().unwrap_or(c.prec())).min().unwrap_or(EXACT)
}

/// Sums blocks of increasing degree until `GATE_RUN` consecutive blocks have valuation at
/// least `target`, or `deg_cap` is reached. The tower's relative precision bounds the
/// precision of each `a^{-α}`.
pub fn l_series(
    tower: &Arc<FieldTower>,
    alpha: u32,
    beta: u32,
    t_prec: usize,
    target: i64,
    deg_cap: u32,
    exec: Exec,
) -> Result<LSeries> {
    if alpha == 0 {
        return Err(Error::Domain("alpha must be positive".into()));
    }
    let mut blocks = Vec::new();
    let mut vals = Vec::new();
    let mut gate_passed = false;
    for d in 0..=deg_cap {
        let b = block(tower, d, alpha, beta, t_prec, exec)?;
        vals.push(block_val(&b));
        blocks.push(b);
        if vals.len() > GATE_RUN && vals[vals.len() - GATE_RUN..].iter().all(|&v| v >= target) {
            gate_passed = true;
            break;
        }
    }
    let mut sum = vec![LaurentSeries::zero(tower); t_prec];
    for b in &blocks {
        add_into(&mut sum, b);
    }
    let sum_prec = sum.iter().map(|c| c.prec()).min().unwrap_or(EXACT);
    let tail = vals.iter().rev().take(GATE_RUN).copied().min().unwrap_or(EXACT);
    let achieved = sum_prec.min(tail);
    let value = TSeries::new(sum.iter().map(|c| c.truncate(achieved)).collect(), &LaurentSeries::zero(tower), t_prec);
    Ok(LSeries { alpha, beta, blocks, block_vals: vals, gate_passed, achieved, value })
}

fn gate_record(l: &LSeries, required: i64) -> CheckRecord {
    let rec = CheckRecord::from_bool("stability gate", l.gate_passed)
        .detail(format!("deg_max {}, block valuations {:?}", l.deg_max(), l.block_vals));
    rec.precision(l.achieved, required)
}

/// `L(χ_t, 1)(t) (t - θ) ω(t) + π̃ = 0`, and the same identity solved for `L`. The solved
/// form is compared in absolute precision since `L` is normalized by `L(0) = 1`.
pub fn pellarin_identity(q: u64, t_prec: usize, u_prec: i64, deg_cap: u32, exec: Exec) -> Result<SuiteReport> {
    let target = u_prec + t_prec as i64 + 4;
    let tower = FieldTower::new(q, 1, target + 8)?;
    let l = l_series(&tower, 1, 1, t_prec, target, deg_cap, exec)?;
    let omega = omega_product(&tower, t_prec, target + 8)?;
    let pi = pi_tilde(&tower, target + 8)?;
    let theta = LaurentSeries::theta(&tower);
    let one = LaurentSeries::one(&tower);

    let mut rep = SuiteReport::new(
        "pellarin",
        json!({ "q": q, "t_prec": t_prec, "u_prec": u_prec, "gate_target": target, "deg_cap": deg_cap }),
    );
    rep.push(gate_record(&l, u_prec));

    let lin = TSeries::new(vec![theta.neg(), one.clone()], &one, t_prec);
    let m = l.value.mul(&lin);
    let mut achieved = EXACT;
    let mut mismatch = None;
    for k in 0..t_prec {
        let mut scale = EXACT;
        let mut acc = if k == 0 { pi.clone() } else { pi.zero_like() };
        if k == 0 {
            scale = pi.body().val();
        }
        for i in 0..=k {
            let term = omega.coeff(k - i).mul_body(m.coeff(i));
            if let Some(v) = term.body().order() {
                scale = scale.min(v);
            }
            acc = acc.add(&term);
        }
        if acc.body().order().is_some() {
            mismatch = Some(k as i64);
            break;
        }
        if scale < EXACT {
            achieved = achieved.min(rel_achieved(acc.body(), scale));
        }
    }
    rep.push(CheckRecord::from_mismatch("L(t) (t - theta) omega(t) + pi = 0", mismatch).precision(achieved, u_prec));

    let denom = omega.mul(&TSeries::new(
        vec![RadicalScaled::from_body(theta), RadicalScaled::from_body(one.neg())],
        &pi,
        t_prec,
    ));
    let solved = denom.inverse()?.scale(&pi);
    let mut achieved = EXACT;
    let mut mismatch = None;
    for k in 0..t_prec {
        let r = solved.coeff(k);
        if r.rho_deg() != 0 && !r.is_zero() {
            mismatch = Some(k as i64);
            break;
        }
        let d = l.value.coeff(k).sub(r.body());
        if d.order().is_some() {
            mismatch = Some(k as i64);
            break;
        }
        achieved = achieved.min(rel_achieved(&d, 0));
    }
    rep.push(
        CheckRecord::from_mismatch("L(t) = pi / ((theta - t) omega(t))", mismatch).precision(achieved, u_prec),
    );
    rep.record("block_valuations", json!(l.block_vals));
    rep.record("deg_max", json!(l.deg_max()));
    rep.record("gate_precision", json!(l.achieved));
    Ok(rep)
}

/// `L(χ_t^β, α)` at `t = θ` against `Σ_a a^{β-α}`, block by block and in total. For
/// `α - β = 1` each block is also compared with `1/Π_{i=1}^{d} (θ - θ^{q^i})`.
pub fn zeta_specialization(
    q: u64,
    beta: u32,
    alpha: u32,
    u_prec: i64,
    deg_cap: u32,
    exec: Exec,
) -> Result<SuiteReport> {
    if alpha <= beta {
        return Err(Error::Domain("specialization needs alpha > beta".into()));
    }
    let target = u_prec + 4;
    let t_prec = (deg_cap * beta) as usize + 1;
    let tower = FieldTower::new(q, 1, target + 8 + t_prec as i64)?;
    let l = l_series(&tower, alpha, beta, t_prec, target + t_prec as i64, deg_cap, exec)?;
    let theta = LaurentSeries::theta(&tower);
    let s = alpha - beta;

    let lhs: Vec<LaurentSeries> = l
        .blocks
        .iter()
        .map(|b| TSeries::new(b.clone(), &theta, t_prec).eval(&theta))
        .collect();
    let rhs: Vec<LaurentSeries> = l
        .blocks
        .iter()
        .enumerate()
        .map(|(d, b)| block(&tower, d as u32, s, 0, 1, exec).map(|v| v[0].clone()).map(|x| x.truncate(b[0].prec())))
        .collect::<Result<_>>()?;

    let mut rep = SuiteReport::new(
        "zeta-specialization",
        json!({ "q": q, "beta": beta, "alpha": alpha, "u_prec": u_prec, "deg_cap": deg_cap }),
    );
    rep.push(gate_record(&l, u_prec));
    let mut worst = EXACT;
    let mut mismatch = None;
    for (d, (x, y)) in lhs.iter().zip(&rhs).enumerate() {
        let diff = x.sub(y);
        if diff.order().is_some_and(|v| v < target) {
            mismatch = Some(d as i64);
            break;
        }
        worst = worst.min(diff.order().unwrap_or(diff.prec()));
    }
    rep.push(
        CheckRecord::from_mismatch("blockwise L(theta) = sum a^(beta-alpha)", mismatch).precision(worst.min(l.achieved), u_prec),
    );
    let total_l = lhs.iter().fold(LaurentSeries::zero(&tower), |acc, x| acc.add(x)).truncate(l.achieved);
    let total_z = rhs.iter().fold(LaurentSeries::zero(&tower), |acc, x| acc.add(x)).truncate(l.achieved);
    let diff = total_l.sub(&total_z);
    rep.push(
        CheckRecord::from_mismatch(format!("L(chi_t^{beta}, {alpha})(theta) = zeta({s})"), diff.order())
            .precision(rel_achieved(&diff, 0), u_prec),
    );
    if s == 1 {
        let qi = q as i64;
        let mut bad = None;
        for (d, y) in rhs.iter().enumerate() {
            let l_d = (1..=d as u32)
                .fold(LaurentSeries::one(&tower), |acc, i| acc.mul(&theta.sub(&LaurentSeries::theta_pow(&tower, qi.pow(i)))));
            if y.first_mismatch(&l_d.inverse()?).is_some() {
                bad = Some(d as i64);
                break;
            }
        }
        rep.push(CheckRecord::from_mismatch("degree-d power sum = 1/prod (theta - theta^(q^i))", bad));
    }
    rep.record("zeta", total_z.to_json());
    rep.record("block_valuations", json!(l.block_vals));
    Ok(rep)
}
