use serde::Serialize;

use super::{CarlitzContext, Convention};
use crate::error::Result;
use crate::field::{QPoly, RationalFn};
use crate::skew::SkewOperator;

/// `s(s+1)⋯(s+j-1)` when `rising`, else `s(s-1)⋯(s-j+1)`.
pub fn rising_factorial(j: usize, rising: bool) -> RationalFn {
    let step = if rising { 1 } else { -1 };
    (0..j as i64).fold(RationalFn::one(), |acc, i| acc.mul(&RationalFn::from_poly(QPoly::from_ints(&[step * i, 1]))))
}

/// How the order-`j` coefficient of `φ(1/s)` compares with `±1/(s)_{j+1}`.
#[derive(Clone, Debug, Serialize)]
pub struct PochhammerRow {
    pub order: usize,
    pub coefficient: String,
    /// Sign `σ` with coefficient `= σ / (rising product of length j+1)`, if any.
    pub rising_sign: Option<i8>,
    /// Same against the falling product.
    pub falling_sign: Option<i8>,
    /// Whether `(-1)^{j+1}/(falling product)` matches.
    pub displayed_pattern_holds: bool,
}

fn sign_against(c: &RationalFn, target: &RationalFn) -> Option<i8> {
    let inv = target.inv().ok()?;
    if *c == inv {
        Some(1)
    } else if *c == inv.neg() {
        Some(-1)
    } else {
        None
    }
}

/// Coefficients of `φ(1/s)` over `Q(s)` (shift, `ϑ = s`, signs `(-1)^k E_k`) up to
/// τ-order `order`, each compared with both Pochhammer conventions.
pub fn phi_inverse_s(order: usize) -> Result<(SkewOperator<RationalFn>, Vec<PochhammerRow>)> {
    let s = RationalFn::var();
    let ctx = CarlitzContext::new(s.clone(), Convention::Old, 1, order + 1);
    let op = ctx.phi(&s.inv()?, order)?;
    let rows = op
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let falling = rising_factorial(j + 1, false);
            let falling_sign = sign_against(c, &falling);
            let want = if j % 2 == 0 { -1 } else { 1 };
            PochhammerRow {
                order: j,
                coefficient: c.to_string(),
                rising_sign: sign_against(c, &rising_factorial(j + 1, true)),
                falling_sign,
                displayed_pattern_holds: falling_sign == Some(want),
            }
        })
        .collect();
    Ok((op, rows))
}
