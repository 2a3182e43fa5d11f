use super::{CarlitzContext, Convention};
use crate::error::Result;
use crate::field::{DifferenceField, DifferenceRing};
use crate::report::CheckRecord;
use crate::skew::SkewOperator;

/// Denominators of the exponential and logarithm, `E = Σ d_n^{-1} τ^n`, `L = Σ l_n^{-1} τ^n`.
#[derive(Clone, Debug)]
pub struct ExpLogCoeffs<R> {
    pub d: Vec<R>,
    pub l: Vec<R>,
    /// First index where the recursion disagrees with the product formula.
    pub closed_form_mismatch: Option<usize>,
}

/// `τ^{nk}ϑ - τ^{nj}ϑ`, oriented by the convention.
fn gap_sign<R: DifferenceField>(ctx: &CarlitzContext<R>, k: usize, j: usize) -> R {
    let g = ctx.tau_theta(k).sub(&ctx.tau_theta(j));
    match ctx.convention() {
        Convention::New => g,
        Convention::Old => g.neg(),
    }
}

/// `d_n` as the product `Π_{j<n} ±(τ^nϑ - τ^jϑ)`.
pub fn closed_form_d<R: DifferenceField>(ctx: &CarlitzContext<R>, n: usize) -> R {
    (0..n).fold(ctx.theta().one_like(), |acc, j| acc.mul(&gap_sign(ctx, n, j)))
}

/// `l_n` as the product `Π_{1≤j≤n} ±(ϑ - τ^jϑ)`.
pub fn closed_form_l<R: DifferenceField>(ctx: &CarlitzContext<R>, n: usize) -> R {
    (1..=n).fold(ctx.theta().one_like(), |acc, j| acc.mul(&gap_sign(ctx, 0, j)))
}

pub fn exp_log_coeffs<R: DifferenceField>(ctx: &CarlitzContext<R>, n_max: usize) -> Result<ExpLogCoeffs<R>> {
    let one = ctx.theta().one_like();
    let mut d = vec![one.clone()];
    let mut l = vec![one];
    for n in 1..=n_max {
        ctx.gap(n)?;
        let dn = gap_sign(ctx, n, 0).mul(&d[n - 1].tau(ctx.tau_power()));
        let ln = gap_sign(ctx, 0, n).mul(&l[n - 1]);
        d.push(dn);
        l.push(ln);
    }
    let closed_form_mismatch = (0..=n_max)
        .find(|&n| !d[n].agrees_with(&closed_form_d(ctx, n)) || !l[n].agrees_with(&closed_form_l(ctx, n)));
    Ok(ExpLogCoeffs { d, l, closed_form_mismatch })
}

fn inverted_series<R: DifferenceField>(ctx: &CarlitzContext<R>, c: &[R]) -> Result<SkewOperator<R>> {
    let one = ctx.theta().one_like();
    let inv = c.iter().map(|x| one.div(x)).collect::<Result<Vec<_>>>()?;
    Ok(SkewOperator::series(inv, ctx.tau_power(), c.len() - 1))
}

pub fn exp_operator<R: DifferenceField>(ctx: &CarlitzContext<R>, c: &ExpLogCoeffs<R>) -> Result<SkewOperator<R>> {
    inverted_series(ctx, &c.d)
}

pub fn log_operator<R: DifferenceField>(ctx: &CarlitzContext<R>, c: &ExpLogCoeffs<R>) -> Result<SkewOperator<R>> {
    inverted_series(ctx, &c.l)
}

/// Compares two operators order by order. For valued backends the achieved
/// precision is the smallest gap between where the difference stops being known and
/// the valuation of the largest summand that produced it.
fn compare<R: DifferenceRing>(
    name: String,
    lhs: &(SkewOperator<R>, Vec<Option<i64>>),
    rhs: &(SkewOperator<R>, Vec<Option<i64>>),
    required: Option<i64>,
) -> CheckRecord {
    let mismatch = lhs.0.first_mismatch(&rhs.0);
    let mut rec = CheckRecord::from_mismatch(name, mismatch.map(|i| i as i64));
    let n = lhs.0.coeffs().len().max(rhs.0.coeffs().len());
    let n = lhs.0.trunc().into_iter().chain(rhs.0.trunc()).fold(n, |n, t| n.min(t + 1));
    let zero = lhs.0.coeffs()[0].zero_like();
    let mut achieved: Option<i64> = None;
    for k in 0..n {
        let a = lhs.0.coeff(k).unwrap_or(&zero);
        let b = rhs.0.coeff(k).unwrap_or(&zero);
        let Some(p) = a.sub(b).precision() else { continue };
        let scale = [lhs.1.get(k), rhs.1.get(k)].into_iter().flatten().flatten().min().copied();
        let rel = p - scale.unwrap_or(0);
        achieved = Some(achieved.map_or(rel, |x| x.min(rel)));
    }
    if let (Some(a), Some(req)) = (achieved, required) {
        rec = rec.precision(a, req);
    } else {
        rec.achieved_prec = achieved;
    }
    rec
}

fn plain<R: DifferenceRing>(op: SkewOperator<R>) -> (SkewOperator<R>, Vec<Option<i64>>) {
    let scale = op.coeffs().iter().map(|c| c.valuation()).collect();
    (op, scale)
}

/// `EL = LE = τ^0`, `φ(z)E = Ez`, `Lφ(z) = zL` and `φ(z) = E z L` to τ-order `tau_order`
/// for each sample `z`. With `required`, valued backends must reach that relative precision.
pub fn exp_log_identities<R: DifferenceField>(
    ctx: &CarlitzContext<R>,
    tau_order: usize,
    samples: &[R],
    required: Option<i64>,
) -> Result<Vec<CheckRecord>> {
    let c = exp_log_coeffs(ctx, tau_order)?;
    let mut out = vec![CheckRecord::from_mismatch(
        "d_n, l_n closed forms",
        c.closed_form_mismatch.map(|i| i as i64),
    )];
    let e = exp_operator(ctx, &c)?;
    let l = log_operator(ctx, &c)?;
    let n = ctx.tau_power();
    let id = plain(SkewOperator::series(vec![ctx.theta().one_like()], n, tau_order));
    out.push(compare("EL = 1".into(), &e.skew_mul_with_scale(&l), &id, required));
    out.push(compare("LE = 1".into(), &l.skew_mul_with_scale(&e), &id, required));
    for (i, z) in samples.iter().enumerate() {
        let phi = ctx.phi(z, tau_order)?;
        let zop = SkewOperator::scalar(z.clone(), n);
        let ez = e.skew_mul_with_scale(&zop);
        out.push(compare(format!("phi(z{i}) E = E z{i}"), &phi.skew_mul_with_scale(&e), &ez, required));
        let zl = zop.skew_mul_with_scale(&l);
        out.push(compare(format!("L phi(z{i}) = z{i} L"), &l.skew_mul_with_scale(&phi), &zl, required));
        out.push(compare(format!("phi(z{i}) = E z{i} L"), &ez.0.skew_mul_with_scale(&l), &plain(phi), required));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldTower, LaurentSeries, RationalFn};

    #[test]
    fn shift_backend_factorials() {
        let s = RationalFn::var();
        let ctx = CarlitzContext::new(s, Convention::Old, 1, 10);
        let c = exp_log_coeffs(&ctx, 6).unwrap();
        let mut fact = 1i64;
        for n in 0..=6usize {
            if n > 0 {
                fact *= n as i64;
            }
            let sign = if n % 2 == 1 { -1 } else { 1 };
            assert_eq!(c.d[n], RationalFn::from_int(sign * fact));
            assert_eq!(c.l[n], RationalFn::from_int(fact));
        }
        assert_eq!(c.closed_form_mismatch, None);
    }

    #[test]
    fn frobenius_backend_small_denominators() {
        let t = FieldTower::new(3, 1, 40).unwrap();
        let th = LaurentSeries::theta(&t);
        let ctx = CarlitzContext::new(th.clone(), Convention::New, 1, 4);
        let c = exp_log_coeffs(&ctx, 2).unwrap();
        assert_eq!(c.d[1], th.pow(3).sub(&th));
        assert_eq!(c.l[2], th.pow(9).sub(&th).mul(&th.pow(3).sub(&th)));
        assert_eq!(c.d[0], LaurentSeries::one(&t));
    }

    #[test]
    fn identities_hold_on_shift_backend() {
        let s = RationalFn::var();
        let ctx = CarlitzContext::new(s.clone(), Convention::Old, 1, 12);
        let recs = exp_log_identities(&ctx, 6, &[s.mul(&s), s.inv().unwrap()], None).unwrap();
        for r in recs {
            assert!(r.passed(), "{r:?}");
        }
    }
}
