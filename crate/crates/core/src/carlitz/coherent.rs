use super::CarlitzContext;
use crate::error::{Error, Result};
use crate::field::{DifferenceField, DifferenceRing, TSeries};
use crate::report::CheckRecord;
use crate::skew::SkewOperator;

/// `x_1, …, x_N` with `x_0 = 0` implied.
#[derive(Clone, Debug)]
pub struct CoherentSequence<R> {
    xs: Vec<R>,
}

impl<R: DifferenceRing> CoherentSequence<R> {
    pub fn new(xs: Vec<R>) -> Result<Self> {
        match xs.first() {
            None => Err(Error::Domain("empty sequence".into())),
            Some(x) if x.is_zero() => Err(Error::Domain("first term of a coherent sequence must be nonzero".into())),
            Some(_) => Ok(CoherentSequence { xs }),
        }
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// `x_i` for `1 ≤ i ≤ N`, and `x_0 = 0`.
    pub fn get(&self, i: usize) -> R {
        if i == 0 {
            self.xs[0].zero_like()
        } else {
            self.xs[i - 1].clone()
        }
    }

    pub fn terms(&self) -> &[R] {
        &self.xs
    }

    pub fn scaled(&self, c: &R) -> Self {
        CoherentSequence { xs: self.xs.iter().map(|x| x.mul(c)).collect() }
    }

    /// `ω_Ξ = Σ x_{i+1} t^i` truncated at `t^{t_prec}`.
    pub fn akhiezer_baker(&self, t_prec: usize) -> Result<TSeries<R>> {
        if self.xs.len() < t_prec {
            return Err(Error::InsufficientLength { needed: t_prec, have: self.xs.len() });
        }
        Ok(TSeries::new(self.xs[..t_prec].to_vec(), &self.xs[0], t_prec))
    }
}

/// One record per index: `φ(ϑ)(x_i) - x_{i-1}` must vanish.
pub fn check_coherent<R: DifferenceField>(ctx: &CarlitzContext<R>, seq: &CoherentSequence<R>) -> Vec<CheckRecord> {
    let op = ctx.phi_theta();
    (1..=seq.len())
        .map(|i| {
            let res = op.apply(&seq.get(i)).sub(&seq.get(i - 1));
            let mut r = CheckRecord::from_bool(format!("coherence x_{i}"), res.is_zero());
            r.achieved_prec = res.precision();
            r
        })
        .collect()
}

/// `φ(a)ω_Ξ = a(t)ω_Ξ`, with `a = Σ a_j ϑ^j` given by constant coefficients `a_j`.
/// The record's metric is the first mismatching `t`-index.
pub fn akhiezer_baker_check<R: DifferenceField>(
    ctx: &CarlitzContext<R>,
    seq: &CoherentSequence<R>,
    a: &[R],
    t_prec: usize,
) -> Result<CheckRecord> {
    let omega = seq.akhiezer_baker(t_prec)?;
    let theta = ctx.theta();
    let mut a_theta = theta.zero_like();
    for c in a.iter().rev() {
        a_theta = a_theta.mul(theta).add(c);
    }
    let op: SkewOperator<R> = ctx.phi(&a_theta, a.len())?;
    let lhs = op.apply_in(&omega, |c| TSeries::constant(c.clone(), t_prec));
    let a_t = TSeries::new(a.to_vec(), theta, t_prec);
    let rhs = a_t.mul(&omega);
    let mismatch = lhs.first_mismatch(&rhs).map(|i| i as i64);
    let mut r = CheckRecord::from_mismatch(format!("akhiezer-baker deg {}", a.len().saturating_sub(1)), mismatch);
    r.achieved_prec = lhs.sub(&rhs).precision();
    Ok(r)
}
