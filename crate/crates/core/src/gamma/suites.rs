use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::eval::{digamma, gamma, gamma_derivatives, hurwitz_zeta, polygamma};
use super::taylor::TruncatedTaylor;
use crate::carlitz::{CarlitzContext, Convention};
use crate::error::{Error, Result};
use crate::field::{QPoly, RationalFn};
use crate::par::{self, Exec};
use crate::report::{CheckRecord, SuiteReport};
use crate::skew::SkewOperator;

type C = Complex64;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Sample points, tolerances and truncation orders shared by the gamma suites.
#[derive(Clone, Debug)]
pub struct GammaConfig {
    pub samples: Vec<C>,
    /// For identities between closed forms.
    pub tol_closed: f64,
    /// For identities involving a truncated series.
    pub tol_series: f64,
    pub torsion_k: u32,
    pub taylor_order: usize,
    pub lx_order: usize,
    pub zeta_order: usize,
    pub eps_ladder: Vec<f64>,
    pub exec: Exec,
}

impl Default for GammaConfig {
    fn default() -> Self {
        GammaConfig {
            samples: vec![c(2.3, 0.7), c(1.7, 0.0), c(3.1, -1.4), c(1.2, 0.3), c(0.6, 0.2)],
            tol_closed: 1e-10,
            tol_series: 1e-8,
            torsion_k: 3,
            taylor_order: 20,
            lx_order: 30,
            zeta_order: 40,
            eps_ladder: vec![1e-2, 1e-3, 1e-4],
            exec: Exec::available(),
        }
    }
}

impl GammaConfig {
    /// Appends `count` points with `0.5 ≤ Re ≤ 3.5`, `|Im| ≤ 1.5` drawn from a seeded stream.
    pub fn with_random_samples(mut self, seed: u64, count: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..count {
            self.samples.push(c(rng.gen_range(0.5..3.5), rng.gen_range(-1.5..1.5)));
        }
        self
    }

    fn echo(&self) -> Value {
        json!({
            "samples": self.samples.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "tol_closed": self.tol_closed,
            "tol_series": self.tol_series,
        })
    }
}

fn fmt_c(z: C) -> String {
    format!("{}{:+}i", z.re, z.im)
}

/// `(L - R, |L| + |R|)`.
fn ident(l: C, r: C) -> (C, f64) {
    (l - r, l.norm() + r.norm())
}

fn residual((d, scale): (C, f64)) -> f64 {
    d.norm() / (scale + 1.0)
}

/// Worst scaled residual of `f` over the sample set.
fn sampled(
    name: &str,
    cfg: &GammaConfig,
    tol: f64,
    f: impl Fn(C) -> Result<(C, f64)> + Sync + Send,
) -> CheckRecord {
    sampled_over(name, &cfg.samples, cfg.exec, tol, |s| f(s).map(residual))
}

fn sampled_over(
    name: &str,
    samples: &[C],
    exec: Exec,
    tol: f64,
    f: impl Fn(C) -> Result<f64> + Sync + Send,
) -> CheckRecord {
    let results = par::map(exec, samples, |&s| f(s));
    let mut worst = (0.0f64, None);
    for (s, r) in samples.iter().zip(results) {
        match r {
            Err(e) => return CheckRecord::fail(name, format!("{e} at s = {}", fmt_c(*s))),
            Ok(r) if r.is_nan() || r > worst.0 => worst = (r, Some(*s)),
            Ok(_) => {}
        }
    }
    let rec = CheckRecord::from_residual(name, worst.0, tol);
    match worst.1 {
        Some(s) => rec.detail(format!("worst at s = {}", fmt_c(s))),
        None => rec,
    }
}

fn single(name: &str, tol: f64, f: impl FnOnce() -> Result<(C, f64)>) -> CheckRecord {
    match f() {
        Ok(v) => CheckRecord::from_residual(name, residual(v), tol),
        Err(e) => CheckRecord::fail(name, e.to_string()),
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn poly(coeffs: &[BigRational]) -> RationalFn {
    RationalFn::from_poly(QPoly::new(coeffs.to_vec()))
}

/// `φ(f)` over `Q(s)` with `φ(s) = s - τ`, which is the convention making `Γ` an `s`-torsion point.
fn phi_shift(f: &RationalFn, order: usize) -> Result<SkewOperator<RationalFn>> {
    let ctx = CarlitzContext::new(RationalFn::var(), Convention::Old, 1, order + 2);
    let op = ctx.phi(f, order)?;
    if !op.is_polynomial() {
        return Err(Error::Domain("expected a polynomial operator".into()));
    }
    Ok(op)
}

/// `Σ_j c_j(s) g(s + j)` with the sum of the summands' magnitudes.
fn apply_numeric(op: &SkewOperator<RationalFn>, s: C, g: impl Fn(C) -> Result<C>) -> Result<(C, f64)> {
    let mut acc = c(0.0, 0.0);
    let mut scale = 0.0;
    for (j, cj) in op.coeffs().iter().enumerate() {
        if cj.is_zero() {
            continue;
        }
        let term = cj.eval_complex(s) * g(s + j as f64)?;
        acc += term;
        scale += term.norm();
    }
    Ok((acc, scale))
}

fn gamma_deriv(n: usize) -> impl Fn(C) -> Result<C> {
    move |z| Ok(gamma_derivatives(z, n)?[n])
}

/// `Σ_{n<K} x^n f(s+n)/n!` with its tail estimate; diverging terms are an error.
pub fn l_x_apply(f: impl Fn(C) -> Result<C>, s: C, x: C, order: usize) -> Result<(C, f64)> {
    let mut inv_fact = 1.0;
    let series = TruncatedTaylor::from_fn("x", order, |n| {
        if n > 0 {
            inv_fact /= n as f64;
        }
        Ok(f(s + n as f64)? * inv_fact)
    });
    let series = series?;
    let tail = series.tail_estimate(x)?;
    Ok((series.eval(x), tail))
}

pub fn gamma_evaluators(cfg: &GammaConfig) -> SuiteReport {
    let mut rep = SuiteReport::new("gamma-evaluators", cfg.echo());
    let tol = cfg.tol_closed;
    rep.push(single("Gamma(1) = 1", tol, || Ok(ident(gamma(c(1.0, 0.0))?, c(1.0, 0.0)))));
    rep.push(sampled("Gamma(s+1) = s Gamma(s)", cfg, tol, |s| Ok(ident(gamma(s + 1.0)?, s * gamma(s)?))));
    rep.push(single("zeta(2, 1) = pi^2/6", tol, || Ok(ident(hurwitz_zeta(c(2.0, 0.0), c(1.0, 0.0))?, c(PI * PI / 6.0, 0.0)))));
    rep.push(single("psi(1) = -lim (H_n - ln n)", tol, || {
        let n = 1_000_000u32;
        let h: f64 = (1..=n).rev().map(|k| 1.0 / k as f64).sum();
        let euler = h - (n as f64).ln() - 0.5 / n as f64;
        Ok(ident(digamma(c(1.0, 0.0))?, c(-euler, 0.0)))
    }));
    rep.push(sampled("psi = Gamma'/Gamma by central differences", cfg, cfg.tol_series, |s| {
        let h = 1e-5 * s.norm().max(1.0);
        let fd = (gamma(s + h)? - gamma(s - h)?) / (2.0 * h * gamma(s)?);
        Ok(ident(fd, digamma(s)?))
    }));
    let z = c(2.5, 0.5);
    rep.push(sampled("zeta(z,s) - zeta(z,s+1) = s^(-z)", cfg, tol, |s| {
        Ok(ident(hurwitz_zeta(z, s)? - hurwitz_zeta(z, s + 1.0)?, s.powc(-z)))
    }));
    rep
}

/// `φ(s^k)` kills `Γ, …, Γ^{(k-1)}` and `φ(s) Γ^{(n)} = -n Γ^{(n-1)}`.
pub fn gamma_torsion_check(cfg: &GammaConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("gamma-torsion", cfg.echo());
    rep.params["k"] = json!(cfg.torsion_k);
    let s = RationalFn::var();
    let tol = cfg.tol_closed;
    for k in 1..=cfg.torsion_k {
        let op = phi_shift(&s.pow(k as i64)?, k as usize + 1)?;
        for n in 0..k as usize {
            rep.push(sampled(&format!("phi(s^{k}) Gamma^({n}) = 0"), cfg, tol, |z| apply_numeric(&op, z, gamma_deriv(n))));
        }
    }
    let phi_s = phi_shift(&s, 2)?;
    let mut literal = Vec::new();
    for n in 1..cfg.torsion_k as usize {
        rep.push(sampled(&format!("phi(s) Gamma^({n}) = -{n} Gamma^({})", n - 1), cfg, tol, |z| {
            let (lhs, scale) = apply_numeric(&phi_s, z, gamma_deriv(n))?;
            let rhs = -(n as f64) * gamma_derivatives(z, n)?[n - 1];
            Ok((lhs - rhs, scale + rhs.norm()))
        }));
        let worst = cfg
            .samples
            .iter()
            .filter_map(|&z| {
                let (lhs, scale) = apply_numeric(&phi_s, z, gamma_deriv(n)).ok()?;
                let rhs = n as f64 * gamma_derivatives(z, n).ok()?[n - 1];
                Some(residual((lhs - rhs, scale + rhs.norm())))
            })
            .fold(0.0f64, f64::max);
        literal.push(json!({ "n": n, "max_residual": worst }));
    }
    rep.record("literal_phi_s_gamma_n_equals_plus_n", json!(literal));
    Ok(rep)
}

/// `Γ(s0 - t)` against its Taylor expansion at `s0`, the digamma analogue, and
/// `X(s+1) - X(s) = 1/(s-t)` for `X(s) = ψ(s - t)`.
pub fn akhiezer_gamma_expansion(cfg: &GammaConfig, s0: C, t: C) -> Result<SuiteReport> {
    if !(t.norm() < s0.norm() && s0.norm() < 1.0 && s0.re > 0.0) {
        return Err(Error::Domain("need |t| < |s0| < 1 and Re s0 > 0".into()));
    }
    let k = cfg.taylor_order;
    let mut rep = SuiteReport::new("akhiezer-gamma", cfg.echo());
    rep.params["s0"] = json!([s0.re, s0.im]);
    rep.params["t"] = json!([t.re, t.im]);
    rep.params["K"] = json!(k);

    let derivs = gamma_derivatives(s0, k - 1)?;
    let mut fact = 1.0;
    let series = TruncatedTaylor::new(
        "t",
        derivs
            .iter()
            .enumerate()
            .map(|(j, d)| {
                if j > 0 {
                    fact *= j as f64;
                }
                d * (if j % 2 == 0 { 1.0 } else { -1.0 }) / fact
            })
            .collect(),
    );
    rep.push(single("t = 0: constant term = Gamma(s0)", cfg.tol_closed, || Ok(ident(series.eval(c(0.0, 0.0)), gamma(s0)?))));
    let lhs = series.eval(t);
    let rhs = gamma(s0 - t)?;
    rep.push(CheckRecord::from_residual(
        "sum (-1)^k Gamma^(k)(s0) t^k/k! = Gamma(s0 - t)",
        residual(ident(lhs, rhs)),
        cfg.tol_series,
    ));
    let tail = series.tail_estimate(t)?;
    let err = (lhs - rhs).norm();
    rep.push(
        CheckRecord::from_bool("truncation error within 4x the geometric tail estimate", err <= 4.0 * tail + 1e-13 * rhs.norm())
            .detail(format!("error {err:.3e}, tail estimate {tail:.3e}")),
    );

    let mut fact = 1.0;
    let psi_series = TruncatedTaylor::from_fn("t", k, |n| {
        if n > 0 {
            fact *= n as f64;
        }
        Ok(polygamma(n as u32, s0)? * (if n % 2 == 0 { 1.0 } else { -1.0 }) / fact)
    })?;
    rep.push(single("sum (-1)^n psi^(n)(s0) t^n/n! = psi(s0 - t)", cfg.tol_series, || {
        Ok(ident(psi_series.eval(t), digamma(s0 - t)?))
    }));
    rep.push(sampled("X(s+1) - X(s) = 1/(s - t) for X = psi(s - t)", cfg, cfg.tol_closed, |s| {
        Ok(ident(digamma(s + 1.0 - t)? - digamma(s - t)?, (s - t).inv()))
    }));
    rep.record("taylor", series.to_json());
    Ok(rep)
}

/// Kernel elements of `φ(f)` for split `f`.
pub fn kernel_basis_checks(cfg: &GammaConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("kernel-basis", cfg.echo());
    let tol = cfg.tol_closed;
    let i = c(0.0, 1.0);
    let one = BigRational::one();
    let zero = rat(0, 1);
    let f_sq1 = poly(&[one.clone(), zero.clone(), one.clone()]);
    let op = phi_shift(&f_sq1, 3)?;
    rep.push(sampled("phi(s^2+1) Gamma(s-i) = 0", cfg, tol, |s| apply_numeric(&op, s, |z| gamma(z - i))));
    rep.push(sampled("phi(s^2+1) Gamma(s+i) = 0", cfg, tol, |s| apply_numeric(&op, s, |z| gamma(z + i))));
    rep.push(sampled("phi(s^2+1) (Gamma(s-i) + Gamma(s+i)) = 0", cfg, tol, |s| {
        apply_numeric(&op, s, |z| Ok(gamma(z - i)? + gamma(z + i)?))
    }));
    let t = c(0.3, 0.2);
    rep.push(sampled("phi(s^2+1) Gamma(s-t) = (t^2+1) Gamma(s-t)", cfg, tol, |s| {
        let (lhs, scale) = apply_numeric(&op, s, |z| gamma(z - t))?;
        let rhs = (t * t + 1.0) * gamma(s - t)?;
        Ok((lhs - rhs, scale + rhs.norm()))
    }));

    let x = rat(3, 2);
    let op1 = phi_shift(&poly(&[-x.clone(), one.clone()]), 2)?;
    rep.push(sampled("phi(s - 3/2) Gamma(s - 3/2) = 0", cfg, tol, |s| apply_numeric(&op1, s, |z| gamma(z - 1.5))));

    let y = rat(2, 5);
    let lin = poly(&[-y.clone(), one]);
    let op2 = phi_shift(&lin.mul(&lin), 3)?;
    rep.push(sampled("phi((s - 2/5)^2) Gamma(s - 2/5) = 0", cfg, tol, |s| apply_numeric(&op2, s, |z| gamma(z - 0.4))));
    rep.push(sampled("phi((s - 2/5)^2) Gamma'(s - 2/5) = 0", cfg, tol, |s| {
        apply_numeric(&op2, s, |z| Ok(gamma_derivatives(z - 0.4, 1)?[1]))
    }));
    rep.record("phi_s2_plus_1", op.to_json());
    Ok(rep)
}

/// `L_x = Σ x^n τ^n/n!` as a truncated series with rational `x`.
fn l_x_operator(x: &BigRational, order: usize) -> SkewOperator<RationalFn> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = BigRational::one();
    for n in 0..=order {
        if n > 0 {
            term = term * x / BigRational::from_integer((n as i64).into());
        }
        coeffs.push(RationalFn::from_rational(term.clone()));
    }
    SkewOperator::series(coeffs, 1, order)
}

/// `L_x L_{-x} = τ^0`, `L_x s = (s + xτ) L_x`, `L_x(Q) = e^x Σ E_i(Q) x^i` exactly; `L_x Γ =
/// (1-x)^{-s} Γ` numerically with a truncation audit; growth of `L_x f` against `f`.
pub fn lx_operator_checks(cfg: &GammaConfig, x: f64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("lx-operator", cfg.echo());
    rep.params["x"] = json!(x);
    rep.params["K"] = json!(cfg.lx_order);
    let order = 12;
    for xr in [rat(2, 5), rat(-3, 7)] {
        let prod = l_x_operator(&xr, order).skew_mul(&l_x_operator(&-xr.clone(), order));
        let id = SkewOperator::series(vec![RationalFn::one()], 1, order);
        rep.push(CheckRecord::from_mismatch(
            format!("L_x L_-x = tau^0 to order {order}, x = {xr}"),
            prod.first_mismatch(&id).map(|i| i as i64),
        ));
        let s = RationalFn::var();
        let lhs = l_x_operator(&xr, order).skew_mul(&SkewOperator::scalar(s.clone(), 1));
        let step = SkewOperator::poly(vec![s.clone(), RationalFn::from_rational(xr.clone())], 1);
        let rhs = step.skew_mul(&l_x_operator(&xr, order));
        rep.push(CheckRecord::from_mismatch(
            format!("L_x s = (s + x tau) L_x to order {order}, x = {xr}"),
            lhs.first_mismatch(&rhs).map(|i| i as i64),
        ));
    }

    // Coefficients of x^n: Q(s+n)/n! on the left, Σ_{i+m=n} E_i(Q)/m! on the right.
    let s = RationalFn::var();
    let q = s.mul(&s);
    let ctx = CarlitzContext::new(s.clone(), Convention::Old, 1, order + 2);
    let e = ctx.derivations(&q, order)?;
    let inv_fact = |n: usize| RationalFn::from_rational(BigRational::new(1.into(), (1..=n as i64).product::<i64>().into()));
    let mut corrected = None;
    let mut literal = None;
    for n in 0..=order {
        let lhs = q.shift(n as i64).mul(&inv_fact(n));
        let mut rhs = RationalFn::zero();
        for (i, ei) in e.iter().enumerate().take(n + 1) {
            rhs = rhs.add(&ei.mul(&inv_fact(n - i)));
        }
        if corrected.is_none() && lhs != rhs {
            corrected = Some(n as i64);
        }
        if literal.is_none() && lhs != e[n] {
            literal = Some(n as i64);
        }
    }
    rep.push(CheckRecord::from_mismatch("L_x(s^2) = e^x sum E_i(s^2) x^i, coefficients of x^n", corrected));
    rep.record("literal_L_x_Q_equals_sum_E_i_x_i_first_mismatch", json!(literal));

    let xc = c(x, 0.0);
    let k = cfg.lx_order;
    let rungs = [k / 3, 2 * k / 3, k];
    rep.push(sampled("L_x Gamma(s) = (1-x)^(-s) Gamma(s)", cfg, cfg.tol_series, |s| {
        let rhs = (1.0 - xc).powc(-s) * gamma(s)?;
        let mut errs = Vec::new();
        let mut last = (c(0.0, 0.0), 0.0);
        for &kk in &rungs {
            let (v, _) = l_x_apply(gamma, s, xc, kk)?;
            errs.push((v - rhs).norm());
            last = ident(v, rhs);
        }
        let floor = 1e-14 * (rhs.norm() + 1.0);
        if errs.windows(2).any(|w| w[1] > w[0].max(floor)) {
            return Err(Error::Domain(format!("truncation error not decreasing in K: {errs:?}")));
        }
        Ok(last)
    }));

    // Growth rates along the real axis of f(s) = s^2 3^s and of L_x f.
    let f = |z: C| Ok(z * z * c(3.0, 0.0).powc(z));
    let rate = |g: &dyn Fn(C) -> Result<C>| -> Result<f64> {
        let (a, b) = (20.0, 40.0);
        Ok((g(c(b, 0.0))?.norm().ln() - g(c(a, 0.0))?.norm().ln()) / (b - a))
    };
    let rf = rate(&f)?;
    let rl = rate(&|z| Ok(l_x_apply(f, z, xc, 60)?.0))?;
    rep.push(
        CheckRecord::from_bool("audit: growth rate of L_x f does not exceed that of f", rl <= rf + 1e-3)
            .detail(format!("rate(f) = {rf:.6}, rate(L_x f) = {rl:.6}")),
    );
    Ok(rep)
}

/// `L_x(Γ(s) α^{-s}) = Γ(s) (α-x)^{-s}` for each `(α, x)`.
pub fn mellin_shift_check(cfg: &GammaConfig, cases: &[(f64, f64)]) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("mellin-shift", cfg.echo());
    rep.params["cases"] = json!(cases);
    for &(alpha, x) in cases {
        if x.is_nan() || x.abs() >= alpha {
            return Err(Error::Domain(format!("need |x| < alpha, got alpha = {alpha}, x = {x}")));
        }
        let a = c(alpha, 0.0);
        let xc = c(x, 0.0);
        rep.push(sampled(&format!("L_x(Gamma(s) a^-s) = Gamma(s) (a-x)^-s, a = {alpha}, x = {x}"), cfg, cfg.tol_series, |s| {
            let (lhs, _) = l_x_apply(|z| Ok(gamma(z)? * a.powc(-z)), s, xc, cfg.lx_order)?;
            Ok(ident(lhs, gamma(s)? * (a - xc).powc(-s)))
        }));
    }
    Ok(rep)
}

/// The constant term at `z = 1` of `ζ(z, s)`, `ζ(n+1, s)` against polygamma, and
/// `Σ_{n≥1} ζ(n+1, s) t^n = ψ(s) - ψ(s - t)`.
pub fn hurwitz_identities(cfg: &GammaConfig, t: C) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("hurwitz-identities", cfg.echo());
    rep.params["eps_ladder"] = json!(cfg.eps_ladder);
    rep.params["t"] = json!([t.re, t.im]);
    let tol = cfg.tol_closed;
    rep.push(single("zeta(2, 1) = psi'(1)", tol, || Ok(ident(hurwitz_zeta(c(2.0, 0.0), c(1.0, 0.0))?, polygamma(1, c(1.0, 0.0))?))));
    for n in 1..=6u32 {
        let nf: f64 = (1..=n).map(|k| k as f64).product();
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        rep.push(sampled(&format!("zeta({}, s) = (-1)^{} psi^({n})(s)/{n}!", n + 1, n + 1), cfg, tol, |s| {
            Ok(ident(hurwitz_zeta(c(n as f64 + 1.0, 0.0), s)?, sign * polygamma(n, s)? / nf))
        }));
    }

    let eps = cfg.eps_ladder.clone();
    if eps.len() < 3 {
        return Err(Error::InsufficientLength { needed: 3, have: eps.len() });
    }
    let g = |s: C, e: f64| -> Result<C> { Ok(hurwitz_zeta(c(1.0 + e, 0.0), s)? - 1.0 / e + digamma(s)?) };
    rep.push(sampled("lim_{eps->0} zeta(1+eps, s) - 1/eps = -psi(s), extrapolated", cfg, cfg.tol_series, |s| {
        let vals: Vec<C> = eps.iter().map(|&e| g(s, e)).collect::<Result<_>>()?;
        let mut limit = c(0.0, 0.0);
        for (k, v) in vals.iter().enumerate() {
            let w: f64 = eps.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &ej)| ej / (ej - eps[k])).product();
            limit += v * w;
        }
        Ok((limit, vals[0].norm()))
    }));
    rep.push(sampled_over("eps-ladder: slopes g(eps)/eps converge", &cfg.samples, cfg.exec, 1.0, |s| {
        let slopes: Vec<C> = eps.iter().map(|&e| Ok(g(s, e)? / e)).collect::<Result<_>>()?;
        // Successive differences must at least halve; 1e-6 absorbs rounding in g at tiny eps.
        let worst = slopes
            .windows(3)
            .map(|w| (w[2] - w[1]).norm() / (0.5 * (w[1] - w[0]).norm() + 1e-6))
            .fold(0.0, f64::max);
        Ok(worst)
    }));

    let k = cfg.zeta_order;
    let valid: Vec<C> = cfg.samples.iter().copied().filter(|s| s.re > t.re && t.norm() < s.norm()).collect();
    rep.push(sampled_over("sum_{n>=1} zeta(n+1, s) t^n = psi(s) - psi(s - t)", &valid, cfg.exec, cfg.tol_series, |s| {
        let mut acc = c(0.0, 0.0);
        let mut tp = t;
        for n in 1..k {
            acc += hurwitz_zeta(c(n as f64 + 1.0, 0.0), s)? * tp;
            tp *= t;
        }
        Ok(residual(ident(acc, digamma(s)? - digamma(s - t)?)))
    }));
    Ok(rep)
}

/// `L_x(Γ(s) ζ(s, α)) = Γ(s) ζ(s, α - x)` and `Σ C(s+n-1, n) ζ(s+n, α) x^n = ζ(s, α - x)`.
pub fn srivastava_identity(cfg: &GammaConfig, cases: &[(C, C)]) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("srivastava", cfg.echo());
    rep.params["cases"] = json!(cases.iter().map(|(a, x)| [[a.re, a.im], [x.re, x.im]]).collect::<Vec<_>>());
    rep.params["K"] = json!(cfg.zeta_order);
    let k = cfg.zeta_order;
    for &(alpha, x) in cases {
        if !(x.norm() < alpha.norm() && alpha.re > 0.0 && (alpha - x).re > 0.0) {
            return Err(Error::Domain(format!("need |x| < |alpha|, Re alpha > 0, Re(alpha - x) > 0 for alpha = {alpha}")));
        }
        let label = format!("alpha = {}, x = {}", fmt_c(alpha), fmt_c(x));
        rep.push(sampled(&format!("L_x(Gamma(s) zeta(s, alpha)) = Gamma(s) zeta(s, alpha - x), {label}"), cfg, cfg.tol_series, |s| {
            let (lhs, _) = l_x_apply(|z| Ok(gamma(z)? * hurwitz_zeta(z, alpha)?), s, x, k)?;
            Ok(ident(lhs, gamma(s)? * hurwitz_zeta(s, alpha - x)?))
        }));
        rep.push(sampled(&format!("sum C(s+n-1, n) zeta(s+n, alpha) x^n = zeta(s, alpha - x), {label}"), cfg, cfg.tol_series, |s| {
            let mut acc = c(0.0, 0.0);
            let mut binom = c(1.0, 0.0);
            let mut xp = c(1.0, 0.0);
            for n in 0..k {
                if n > 0 {
                    binom *= (s + (n - 1) as f64) / n as f64;
                    xp *= x;
                }
                acc += binom * hurwitz_zeta(s + n as f64, alpha)? * xp;
            }
            Ok(ident(acc, hurwitz_zeta(s, alpha - x)?))
        }));
    }
    Ok(rep)
}

/// Reflection, Gauss multiplication for the given orders, and constancy of
/// `Σ_{k<N} ψ(s + k/N) - N ψ(N s)`.
pub fn classical_functional_relations(cfg: &GammaConfig, orders: &[u32]) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("classical-relations", cfg.echo());
    rep.params["orders"] = json!(orders);
    let tol = cfg.tol_closed;
    rep.push(single("Gamma(1/2)^2 = pi", tol, || Ok(ident(gamma(c(0.5, 0.0))?.powi(2), c(PI, 0.0)))));
    rep.push(sampled("Gamma(s) Gamma(1-s) sin(pi s) = pi", cfg, tol, |s| {
        Ok(ident(gamma(s)? * gamma(1.0 - s)? * (PI * s).sin(), c(PI, 0.0)))
    }));
    for &n in orders {
        let nf = n as f64;
        rep.push(sampled(&format!("prod_(k<{n}) Gamma(s+k/{n}) = (2pi)^(({n}-1)/2) {n}^(1/2-{n}s) Gamma({n}s)"), cfg, tol, |s| {
            let mut lhs = c(1.0, 0.0);
            for k in 0..n {
                lhs *= gamma(s + k as f64 / nf)?;
            }
            let rhs = (2.0 * PI).powf((nf - 1.0) / 2.0) * c(nf, 0.0).powc(0.5 - nf * s) * gamma(nf * s)?;
            Ok(ident(lhs, rhs))
        }));
    }
    let big_n = 3u32;
    let nf = big_n as f64;
    let d = |s: C| -> Result<C> {
        let mut acc = -nf * digamma(nf * s)?;
        for k in 0..big_n {
            acc += digamma(s + k as f64 / nf)?;
        }
        Ok(acc)
    };
    let values: Vec<Result<C>> = par::map(cfg.exec, &cfg.samples, |&s| d(s));
    let values: Vec<C> = values.into_iter().collect::<Result<_>>()?;
    let spread = values.iter().map(|v| (v - values[0]).norm()).fold(0.0, f64::max);
    rep.push(CheckRecord::from_residual(format!("sum_(k<{big_n}) psi(s+k/{big_n}) - {big_n} psi({big_n}s) is constant"), spread, 1e-9));
    rep.push(CheckRecord::from_residual(
        format!("the constant equals -{big_n} ln {big_n}"),
        residual(ident(values[0], c(-nf * nf.ln(), 0.0))),
        tol,
    ));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> GammaConfig {
        GammaConfig { exec: Exec::Sequential, ..GammaConfig::default() }
    }

    fn assert_passes(rep: &SuiteReport) {
        for ch in &rep.checks {
            assert!(ch.passed(), "{}: {ch:?}", rep.suite);
        }
    }

    #[test]
    fn evaluators() {
        assert_passes(&gamma_evaluators(&cfg()));
    }

    #[test]
    fn torsion() {
        assert_passes(&gamma_torsion_check(&cfg()).unwrap());
    }

    #[test]
    fn expansion() {
        assert_passes(&akhiezer_gamma_expansion(&cfg(), c(0.8, 0.0), c(0.3, 0.0)).unwrap());
        assert!(akhiezer_gamma_expansion(&cfg(), c(1.2, 0.0), c(0.3, 0.0)).is_err());
    }

    #[test]
    fn kernels() {
        assert_passes(&kernel_basis_checks(&cfg()).unwrap());
    }

    #[test]
    fn modified_logarithm() {
        let rep = lx_operator_checks(&cfg(), 0.4).unwrap();
        assert_passes(&rep);
        assert_eq!(rep.data["literal_L_x_Q_equals_sum_E_i_x_i_first_mismatch"], json!(1));
    }

    #[test]
    fn mellin() {
        assert_passes(&mellin_shift_check(&cfg(), &[(1.0, 0.4), (2.0, 0.5), (2.0, 0.0)]).unwrap());
    }

    #[test]
    fn hurwitz() {
        assert_passes(&hurwitz_identities(&cfg(), c(0.3, 0.0)).unwrap());
    }

    #[test]
    fn srivastava() {
        let cases = [(c(2.0, 0.0), c(0.5, 0.0)), (c(1.0, 1.0), c(0.4, 0.0)), (c(2.0, 0.0), c(0.0, 0.0))];
        assert_passes(&srivastava_identity(&cfg(), &cases).unwrap());
    }

    #[test]
    fn classical() {
        assert_passes(&classical_functional_relations(&cfg(), &[2, 3]).unwrap());
    }

    #[test]
    fn random_samples_are_reproducible() {
        let a = GammaConfig::default().with_random_samples(7, 3);
        let b = GammaConfig::default().with_random_samples(7, 3);
        assert_eq!(a.samples, b.samples);
        assert_eq!(a.samples.len(), 8);
    }
}
