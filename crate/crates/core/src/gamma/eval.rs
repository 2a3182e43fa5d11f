//! Double-precision `Γ`, `ψ^{(n)}` and Hurwitz `ζ(z, s)` on complex arguments.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type ComplexVal = Complex64;

/// Distance to a pole below which evaluators refuse to answer.
pub const POLE_MARGIN: f64 = 1e-10;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const BERNOULLI_TERMS: usize = 20;

/// `B_2, B_4, …, B_{2·BERNOULLI_TERMS}` from the exact recurrence `Σ_{k≤m} C(m+1,k) B_k = 0`.
fn bernoulli_even() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = 2 * BERNOULLI_TERMS;
        let mut b: Vec<BigRational> = vec![BigRational::one()];
        for m in 1..=n {
            let mut binom = BigInt::one();
            let mut s = BigRational::zero();
            for (k, bk) in b.iter().enumerate() {
                s += BigRational::from_integer(binom.clone()) * bk;
                binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
            }
            b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
        }
        (1..=BERNOULLI_TERMS).map(|k| b[2 * k].to_f64().unwrap()).collect()
    })
}

fn finite(z: Complex64, what: &str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what.into()))
    }
}

fn check_pole(z: Complex64, what: &str) -> Result<()> {
    if z.re <= 0.5 {
        let n = z.re.round();
        if n <= 0.0 && (z - n).norm() < POLE_MARGIN {
            return Err(Error::PoleProximity(format!("{what} at {z}")));
        }
    }
    Ok(())
}

/// Lanczos approximation for `Re z ≥ 1/2`, recurrence upward otherwise.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    check_pole(z, "gamma")?;
    let mut z = z;
    let mut denom = Complex64::new(1.0, 0.0);
    while z.re < 0.5 {
        denom *= z;
        z += 1.0;
    }
    let zm = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (zm + i as f64);
    }
    let t = zm + LANCZOS_G + 0.5;
    let g = (2.0 * PI).sqrt() * t.powc(zm + 0.5) * (-t).exp() * x;
    finite(g / denom, "gamma")
}

const ASYMPTOTIC_RE: f64 = 15.0;

/// `ψ(z)` by upward recurrence and the Stirling series.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    check_pole(z, "digamma")?;
    let mut z = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.re < ASYMPTOTIC_RE {
        acc -= z.inv();
        z += 1.0;
    }
    let z2 = (z * z).inv();
    let mut zp = z2;
    let mut s = z.ln() - 0.5 / z;
    for (k, &b) in bernoulli_even().iter().enumerate().take(10) {
        s -= b / (2.0 * (k + 1) as f64) * zp;
        zp *= z2;
    }
    finite(acc + s, "digamma")
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `ψ^{(n)}(z)`; `n = 0` is [`digamma`].
pub fn polygamma(n: u32, z: Complex64) -> Result<Complex64> {
    if n == 0 {
        return digamma(z);
    }
    check_pole(z, "polygamma")?;
    let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
    let nf = factorial(n);
    let mut z = z;
    let mut acc = Complex64::new(0.0, 0.0);
    let start = ASYMPTOTIC_RE + n as f64;
    while z.re < start {
        acc -= -sign * nf * z.powi(-(n as i32) - 1);
        z += 1.0;
    }
    let zn = z.powi(-(n as i32));
    let mut s = factorial(n - 1) * zn + nf * 0.5 * zn / z;
    let z2 = (z * z).inv();
    let mut zp = zn * z2;
    // (2k+n-1)!/(2k)! grows; keep terms while they shrink.
    let mut last = f64::INFINITY;
    for (k, &b) in bernoulli_even().iter().enumerate() {
        let k2 = 2 * (k as u32 + 1);
        let ratio: f64 = (k2 + 1..=k2 + n - 1).map(|j| j as f64).product();
        let term = b * ratio * zp;
        if term.norm() > last {
            break;
        }
        last = term.norm();
        s += term;
        zp *= z2;
        if last < 1e-18 * s.norm() {
            break;
        }
    }
    finite(acc + sign * s, "polygamma")
}

/// Hurwitz `ζ(z, s) = Σ_{k≥0} (k+s)^{-z}` for `Re s > 0`, `z ≠ 1`, by Euler–Maclaurin after
/// summing the first terms directly.
pub fn hurwitz_zeta(z: Complex64, s: Complex64) -> Result<Complex64> {
    if s.re <= 0.0 {
        return Err(Error::Domain(format!("hurwitz zeta needs Re s > 0, got {s}")));
    }
    if (z - 1.0).norm() < 1e-14 {
        return Err(Error::PoleProximity(format!("hurwitz zeta at z = {z}")));
    }
    let n = (20.0 + z.norm()).ceil() as usize;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n {
        sum += (s + k as f64).powc(-z);
    }
    let a = s + n as f64;
    let a_mz = a.powc(-z);
    sum += a * a_mz / (z - 1.0) + 0.5 * a_mz;
    let a2 = (a * a).inv();
    let mut poch = z;
    let mut ap = a_mz / a;
    let mut fact = 2.0;
    let mut last = f64::INFINITY;
    for (j, &b) in bernoulli_even().iter().enumerate() {
        let term = b / fact * poch * ap;
        if term.norm() > last {
            break;
        }
        last = term.norm();
        sum += term;
        if last < 1e-18 * sum.norm() {
            break;
        }
        let m = 2 * j as u32 + 1;
        poch *= (z + m as f64) * (z + (m + 1) as f64);
        fact *= ((m + 2) * (m + 3)) as f64;
        ap *= a2;
    }
    finite(sum, "hurwitz_zeta")
}

/// `Γ^{(0)}(z), …, Γ^{(n)}(z)` from `Γ^{(m+1)} = Σ_k C(m,k) ψ^{(k)} Γ^{(m-k)}`.
pub fn gamma_derivatives(z: Complex64, n: usize) -> Result<Vec<Complex64>> {
    let g = gamma(z)?;
    let psi: Vec<Complex64> = (0..n as u32).map(|k| polygamma(k, z)).collect::<Result<_>>()?;
    let mut out = vec![g];
    for m in 0..n {
        let mut binom = 1.0;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..=m {
            acc += binom * psi[k] * out[m - k];
            binom = binom * (m - k) as f64 / (k + 1) as f64;
        }
        out.push(finite(acc, "gamma derivative")?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (a.norm() + b.norm() + 1.0)
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_even();
        assert!((b[0] - 1.0 / 6.0).abs() < 1e-16);
        assert!((b[1] + 1.0 / 30.0).abs() < 1e-16);
        assert!((b[5] + 691.0 / 2730.0).abs() < 1e-14);
    }

    #[test]
    fn gamma_basics() {
        assert!(close(gamma(c(1.0, 0.0)).unwrap(), c(1.0, 0.0), 1e-14));
        assert!(close(gamma(c(5.0, 0.0)).unwrap(), c(24.0, 0.0), 1e-14));
        assert!(close(gamma(c(0.5, 0.0)).unwrap().powi(2), c(PI, 0.0), 1e-14));
        let z = c(-1.3, 0.4);
        assert!(close(gamma(z + 1.0).unwrap(), z * gamma(z).unwrap(), 1e-13));
        assert!(matches!(gamma(c(-2.0, 0.0)), Err(Error::PoleProximity(_))));
    }

    #[test]
    fn digamma_at_one_is_minus_euler_constant() {
        // H_n - ln n - 1/(2n) converges to γ with error ~ 1/(12 n^2).
        let n = 1_000_000u32;
        let h: f64 = (1..=n).rev().map(|k| 1.0 / k as f64).sum();
        let gamma_e = h - (n as f64).ln() - 0.5 / n as f64;
        assert!((digamma(c(1.0, 0.0)).unwrap().re + gamma_e).abs() < 1e-12);
    }

    #[test]
    fn zeta_two_one() {
        let z = hurwitz_zeta(c(2.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(close(z, c(PI * PI / 6.0, 0.0), 1e-14));
        let s = c(0.7, 0.3);
        let zz = c(2.5, 0.5);
        let tele = hurwitz_zeta(zz, s).unwrap() - hurwitz_zeta(zz, s + 1.0).unwrap();
        assert!(close(tele, s.powc(-zz), 1e-13));
    }

    #[test]
    fn polygamma_recurrence_and_derivative() {
        let z = c(1.4, -0.6);
        for n in 1..6u32 {
            let lhs = polygamma(n, z + 1.0).unwrap() - polygamma(n, z).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!(close(lhs, sign * factorial(n) * z.powi(-(n as i32) - 1), 1e-12), "n={n}");
        }
        let h = 1e-5;
        let fd = (digamma(z + h).unwrap() - digamma(z - h).unwrap()) / (2.0 * h);
        assert!(close(fd, polygamma(1, z).unwrap(), 1e-8));
    }

    #[test]
    fn gamma_derivative_matches_difference_quotient() {
        let z = c(2.3, 0.7);
        let d = gamma_derivatives(z, 2).unwrap();
        let h = 1e-5;
        let fd = (gamma(z + h).unwrap() - gamma(z - h).unwrap()) / (2.0 * h);
        assert!(close(d[1], fd, 1e-8));
    }
}
