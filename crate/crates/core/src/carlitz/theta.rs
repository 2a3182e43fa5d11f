use super::{CarlitzContext, CoherentSequence, Convention};
use crate::error::{Error, Result};
use crate::field::{QDilationElem, RationalFn};
use crate::report::CheckRecord;

/// `d_m^{[n]} = q̂^{-m(m+2n+1)/2} Π_{i=1}^{n} (q̂^{i+m} - 1)/(q̂^i - 1)`.
pub fn theta_coefficient(m: i64, n: u32) -> RationalFn {
    let one = RationalFn::one();
    let mut c = RationalFn::var_pow(-(m * (m + 2 * n as i64 + 1)) / 2);
    for i in 1..=n as i64 {
        let num = RationalFn::var_pow(i + m).sub(&one);
        let den = RationalFn::var_pow(i).sub(&one);
        c = c.mul(&num).div(&den).expect("q^i - 1 is nonzero for i >= 1");
    }
    c
}

/// `x_1, …, x_{n_max+1}` with `x_{n+1} = Σ_{|m| ≤ M} d_m^{[n]} x^m`, each valid on `[-M, M]`.
pub fn theta_sequence(window: i64, n_max: u32) -> Result<CoherentSequence<QDilationElem>> {
    let xs = (0..=n_max)
        .map(|n| QDilationElem::windowed((-window..=window).map(|m| (m, theta_coefficient(m, n))), -window, window))
        .collect();
    CoherentSequence::new(xs)
}

/// `φ(x)(x_1) = 0` and `φ(x)(x_{n+1}) = x_n` for the theta sequence, on the sub-window
/// where both sides are known. Alongside each `n ≥ 1` the twisted relation
/// `φ(x)(x_{n+1}) = -x_n` is recorded, which is what the coefficients actually satisfy.
pub fn jacobi_theta_checks(window: i64, n_max: u32) -> Result<Vec<CheckRecord>> {
    if window < n_max as i64 + 1 {
        return Err(Error::WindowTooSmall(format!("window {window} cannot support n_max {n_max}")));
    }
    let seq = theta_sequence(window, n_max)?;
    let ctx = CarlitzContext::new(QDilationElem::x(), Convention::Old, 1, 1);
    let op = ctx.phi_theta();
    let record = |name: String, res: QDilationElem| match res.window() {
        Some((lo, hi)) => CheckRecord::from_bool(name, res.is_zero()).detail(format!("valid on [{lo}, {hi}]")),
        None => CheckRecord::fail(name, "no exponent left in the valid window"),
    };
    let mut out = Vec::new();
    for i in 1..=seq.len() {
        let image = op.apply(&seq.get(i));
        if i == 1 {
            out.push(record("phi(x)(x_1) = 0".into(), image));
            continue;
        }
        let prev = seq.get(i - 1);
        out.push(record(format!("phi(x)(x_{i}) = x_{}", i - 1), image.sub(&prev)));
        out.push(record(format!("phi(x)(x_{i}) = -x_{}", i - 1), image.add(&prev)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_examples() {
        for m in -4..=4 {
            assert_eq!(theta_coefficient(m, 0), RationalFn::var_pow(-(m * (m + 1)) / 2));
        }
        assert_eq!(theta_coefficient(0, 1), RationalFn::one());
        for n in 1..4u32 {
            for m in -(n as i64)..0 {
                assert!(theta_coefficient(m, n).is_zero());
            }
        }
    }

    #[test]
    fn sequence_is_coherent_up_to_alternating_sign() {
        for r in jacobi_theta_checks(6, 3).unwrap() {
            let twisted = r.name.contains("= -x") || r.name.ends_with("= 0");
            assert_eq!(r.passed(), twisted, "{r:?}");
            assert_eq!(r.detail.as_deref(), Some("valid on [-5, 6]"));
        }
    }

    #[test]
    fn small_window_rejected() {
        assert!(matches!(jacobi_theta_checks(2, 2), Err(Error::WindowTooSmall(_))));
    }
}
