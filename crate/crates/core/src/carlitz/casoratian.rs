use super::CarlitzContext;
use crate::error::{Error, Result};
use crate::field::{DifferenceField, DifferenceRing};

/// The determinant `det(E_{i}(z_j))` together with the companion `det(τ^{ni}(z_j))`
/// and the product `F_n` linking them.
#[derive(Clone, Debug)]
pub struct Casoratian<R> {
    pub det_e: R,
    pub det_tau: R,
    pub factor: R,
    /// `det_e · F_n == det_tau`.
    pub consistent: bool,
}

/// Cofactor expansion along the first row; only ring operations, so truncated
/// backends lose no precision to pivoting.
pub(crate) fn det<R: DifferenceRing>(m: &[Vec<R>]) -> R {
    let n = m.len();
    match n {
        1 => return m[0][0].clone(),
        2 => return m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        _ => {}
    }
    let mut acc = m[0][0].zero_like();
    for col in 0..n {
        let minor: Vec<Vec<R>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = m[0][col].mul(&det(&minor));
        acc = if col % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

pub fn casoratian<R: DifferenceField>(ctx: &CarlitzContext<R>, zs: &[R]) -> Result<Casoratian<R>> {
    let n = zs.len();
    if n < 2 {
        return Err(Error::Domain("casoratian needs at least two elements".into()));
    }
    let cols: Vec<Vec<R>> = zs.iter().map(|z| ctx.derivations(z, n - 1)).collect::<Result<_>>()?;
    let e_mat: Vec<Vec<R>> = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let n_pow = ctx.tau_power();
    let t_mat: Vec<Vec<R>> = (0..n).map(|i| zs.iter().map(|z| z.tau(n_pow * i as u32)).collect()).collect();
    let mut factor = zs[0].one_like();
    for k in 1..n {
        for i in 0..k {
            let g = ctx.tau_theta(k).sub(&ctx.tau_theta(i));
            if g.is_zero() {
                return Err(Error::PeriodicTheta { index: k - i });
            }
            factor = factor.mul(&g);
        }
    }
    let det_e = det(&e_mat);
    let det_tau = det(&t_mat);
    let consistent = det_e.mul(&factor).agrees_with(&det_tau);
    Ok(Casoratian { det_e, det_tau, factor, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carlitz::Convention;
    use crate::field::RationalFn;

    #[test]
    fn standard_basis_is_independent() {
        let s = RationalFn::var();
        let ctx = CarlitzContext::new(s.clone(), Convention::Old, 1, 6);
        let c = casoratian(&ctx, &[RationalFn::one(), s.clone(), s.mul(&s)]).unwrap();
        assert!(c.consistent);
        assert!(!c.det_e.is_zero());
        assert_eq!(c.factor, RationalFn::from_int(2));
        // Rows (1,s,s²), (1,s+1,(s+1)²), (1,s+2,(s+2)²): Vandermonde in s, s+1, s+2.
        assert_eq!(c.det_tau, RationalFn::from_int(2));
    }

    #[test]
    fn planted_dependence_vanishes() {
        let s = RationalFn::var();
        let ctx = CarlitzContext::new(s.clone(), Convention::Old, 1, 6);
        let z = s.inv().unwrap().add(&s.mul(&s));
        let c = casoratian(&ctx, &[z.clone(), z.mul(&RationalFn::from_int(-5))]).unwrap();
        assert!(c.det_e.is_zero() && c.det_tau.is_zero());
        assert_eq!(c.factor, RationalFn::one());
    }
}
