//! Acceptance criteria 1-10, one line each. Runs without the libtest harness so the lines
//! are printed under `cargo test`; exits nonzero if any criterion fails unexpectedly.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use carlitz_cli::{output, run_suites, CommonArgs, Format, RunConfig};
use carlitz_core::anderson_thakur::{
    cyclotomic_relation, gauss_thakur_sum, kummer_radical_check, multiplication_relation, omega_eigen_check,
    omega_three_ways, pellarin_identity, zeta_specialization,
};
use carlitz_core::carlitz::{exp_log_coeffs, exp_log_identities, jacobi_theta_checks, CarlitzContext, Convention};
use carlitz_core::field::{FieldTower, FqElem, LaurentSeries, QPoly, RationalFn};
use carlitz_core::gamma::{
    akhiezer_gamma_expansion, classical_functional_relations, gamma_evaluators, gamma_torsion_check,
    hurwitz_identities, kernel_basis_checks, lx_operator_checks, mellin_shift_check, srivastava_identity, GammaConfig,
};
use carlitz_core::par::Exec;
use carlitz_core::report::{CheckRecord, SuiteReport};
use carlitz_core::skew::SkewOperator;
use carlitz_core::soundness::{skew_soundness, Backend};
use num_complex::Complex64 as C;

type Outcome = Result<String, String>;

/// Failed checks across reports, as `suite: check (detail)`.
fn failures(reps: &[SuiteReport]) -> Vec<String> {
    reps.iter()
        .flat_map(|r| r.checks.iter().filter(|c| !c.passed()).map(move |c| (r, c)))
        .map(|(r, c)| format!("{} {}: {} ({})", r.suite, r.params, c.name, c.detail.as_deref().unwrap_or("")))
        .collect()
}

fn all_pass(reps: &[SuiteReport], summary: String) -> Outcome {
    let f = failures(reps);
    if f.is_empty() {
        Ok(summary)
    } else {
        Err(f.join("; "))
    }
}

fn within(elapsed: Duration, limit: Duration, o: Outcome) -> Outcome {
    match o {
        Ok(s) if elapsed < limit => Ok(s),
        Ok(s) => Err(format!("{s}; took {:.1} s, limit {:.0} s", elapsed.as_secs_f64(), limit.as_secs_f64())),
        e => e,
    }
}

fn checks(reps: &[SuiteReport]) -> usize {
    reps.iter().map(|r| r.checks.len()).sum()
}

fn lift<T>(r: carlitz_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn skew_soundness_200() -> Outcome {
    let start = Instant::now();
    let mut reps = Vec::new();
    for b in Backend::ALL {
        reps.push(lift(skew_soundness(b, 200, 1, Exec::available()))?);
    }
    let o = all_pass(&reps, format!("200 triples x {} backends, {} checks", reps.len(), checks(&reps)));
    within(start.elapsed(), Duration::from_secs(5), o)
}

fn carlitz_tables() -> Outcome {
    let p = |c: &[i64]| RationalFn::from_poly(QPoly::from_ints(c));
    let s = RationalFn::var();
    let ctx = CarlitzContext::new(s.clone(), Convention::Old, 1, 8);
    let tables = [
        (s.mul(&s), vec![p(&[0, 0, 1]), p(&[-1, -2]), p(&[1])]),
        (s.mul(&s).mul(&s), vec![p(&[0, 0, 0, 1]), p(&[-1, -3, -3]), p(&[3, 3]), p(&[-1])]),
    ];
    for (i, (z, want)) in tables.into_iter().enumerate() {
        let got = lift(ctx.phi(&z, 6))?;
        if !got.is_polynomial() || got.first_mismatch(&SkewOperator::poly(want, 1)).is_some() {
            return Err(format!("phi(s^{}) = {}", i + 2, got.to_json()));
        }
    }
    for q in [2, 3, 4] {
        let t = lift(FieldTower::new(q, 1, 40))?;
        let th = LaurentSeries::theta(&t);
        let ctx = CarlitzContext::new(th.clone(), Convention::New, 1, 6);
        let got = lift(ctx.phi(&th, 5))?;
        if got.coeffs() != [th.clone(), LaurentSeries::one(&t)] {
            return Err(format!("phi(theta) over q = {q}: {}", got.to_json()));
        }
    }
    Ok("phi(s^2), phi(s^3) exact; phi(theta) = theta + tau for q = 2, 3, 4".into())
}

fn exp_log() -> Outcome {
    let start = Instant::now();
    let mut worst = i64::MAX;
    for q in [2, 3, 4] {
        let t = lift(FieldTower::new(q, 1, 80))?;
        let th = LaurentSeries::theta(&t);
        let ctx = CarlitzContext::new(th.clone(), Convention::New, 1, 10);
        let c = lift(exp_log_coeffs(&ctx, 8))?;
        if let Some(n) = c.closed_form_mismatch {
            return Err(format!("q = {q}: d_n/l_n closed form differs at n = {n}"));
        }
        let samples = [th.clone(), th.mul(&th).add(&LaurentSeries::one(&t)), th.pow(3)];
        let recs = lift(exp_log_identities(&ctx, 8, &samples, Some(80)))?;
        let mut rep = SuiteReport::new("exp-log", serde_json::json!({ "q": q }));
        worst = recs.iter().filter_map(|r| r.achieved_prec).fold(worst, i64::min);
        rep.extend(recs);
        all_pass(&[rep], String::new())?;
    }
    let o = Ok(format!("q = 2, 3, 4, n <= 8, tau-order 8, worst precision {worst} >= 80"));
    within(start.elapsed(), Duration::from_secs(10), o)
}

fn monic_up_to_3(t: &FieldTower) -> Vec<Vec<FqElem>> {
    let f = t.subfield();
    let mut out = vec![vec![t.int(1)]];
    for d in 1..=3u32 {
        for mut i in 0..f.len().pow(d) {
            let mut a: Vec<FqElem> = (0..d)
                .map(|_| {
                    let c = f[i % f.len()];
                    i /= f.len();
                    c
                })
                .collect();
            a.push(t.int(1));
            out.push(a);
        }
    }
    out
}

fn omega_consistency() -> Outcome {
    let start = Instant::now();
    let mut reps = Vec::new();
    let mut polys = 0;
    for q in [2, 3] {
        reps.push(lift(omega_three_ways(q, 16, 60, Exec::available()))?);
        let t = lift(FieldTower::new(q, 1, 1))?;
        let a = monic_up_to_3(&t);
        polys += a.len();
        reps.push(lift(omega_eigen_check(q, &a, 16, 60, Exec::available()))?);
    }
    let o = all_pass(&reps, format!("three constructions agree for q = 2, 3; eigen identity for {polys} monic a"));
    within(start.elapsed(), Duration::from_secs(30), o)
}

fn functional_relations() -> Outcome {
    let mut reps = Vec::new();
    for q in [3, 4] {
        for n in [2, 3] {
            reps.push(lift(multiplication_relation(q, n, 16, 60))?);
        }
    }
    let mut prefactors = Vec::new();
    for (q, n) in [(3, 2), (4, 3), (5, 2), (5, 4)] {
        let r = lift(cyclotomic_relation(q, n, 16, 60))?;
        match r.data.get("mu_power") {
            Some(v) => prefactors.push(format!("({q},{n}): {v}")),
            None => return Err(format!("no prefactor reported for (q, n) = ({q}, {n})")),
        }
        reps.push(r);
    }
    all_pass(&reps, format!("multiplication and cyclotomic bodies exact; mu^(q-1) {}", prefactors.join(", ")))
}

fn gauss_thakur() -> Outcome {
    let mut reps = Vec::new();
    for (q, a) in [(3u64, [1i64, 0, 1]), (2, [1, 1, 1])] {
        let t = lift(FieldTower::new(q, 1, 1))?;
        let a: Vec<FqElem> = a.iter().map(|&c| t.int(c)).collect();
        reps.push(lift(gauss_thakur_sum(q, &a, 40, Exec::available()))?);
    }
    let prec = reps.iter().flat_map(|r| &r.checks).filter_map(|c| c.achieved_prec).min().unwrap_or(0);
    if prec < 40 {
        return Err(format!("Gauss-Thakur precision {prec} < 40"));
    }
    for d in [1, 2] {
        reps.push(lift(kummer_radical_check(2, d, None, 40))?);
    }
    all_pass(&reps, format!("sums agree to u-precision {prec}; Kummer q = 2, d = 1, 2"))
}

fn pellarin() -> Outcome {
    let start = Instant::now();
    let mut reps = Vec::new();
    let mut lines = Vec::new();
    for q in [2, 3] {
        let r = lift(pellarin_identity(q, 10, 40, 10, Exec::available()))?;
        let ident: &CheckRecord = r.checks.iter().find(|c| c.name.contains("+ pi = 0")).ok_or("identity record missing")?;
        let got = ident.achieved_prec.unwrap_or(0);
        if got < 30 {
            return Err(format!("q = {q}: identity holds only to {got} u-digits"));
        }
        lines.push(format!("q={q}: deg_max {}, gate {}, identity {got}", r.data["deg_max"], r.data["gate_precision"]));
        reps.push(r);
        for (b, a) in [(0, 1), (0, 2), (1, 2), (1, 3)] {
            reps.push(lift(zeta_specialization(q, b, a, 40, 10, Exec::available()))?);
        }
    }
    let o = all_pass(&reps, format!("{}; zeta specializations pass", lines.join("; ")));
    within(start.elapsed(), Duration::from_secs(120), o)
}

/// The literal relation `φ(x)(x_{n+1}) = x_n` does not hold for the theta coefficients; they
/// satisfy it with `-x_n`. Reported as a failure; the run only stops on other outcomes.
fn jacobi_theta() -> (Outcome, bool) {
    let recs = match jacobi_theta_checks(12, 3) {
        Ok(r) => r,
        Err(e) => return (Err(e.to_string()), false),
    };
    let base = recs.iter().filter(|r| r.name.ends_with("= 0")).all(CheckRecord::passed);
    let literal: Vec<&CheckRecord> = recs.iter().filter(|r| r.name.contains(") = x_")).collect();
    let twisted = recs.iter().filter(|r| r.name.contains("= -x_")).all(CheckRecord::passed);
    let literal_ok = literal.iter().all(|r| r.passed());
    if base && literal_ok {
        return (Ok("phi(x)(x_1) = 0 and phi(x)(x_{n+1}) = x_n on M = 12, n <= 3".into()), false);
    }
    let failed: Vec<&str> = literal.iter().filter(|r| !r.passed()).map(|r| r.name.as_str()).collect();
    let msg = format!(
        "phi(x)(x_1) = 0 {}; literal {} fail; twisted phi(x)(x_{{n+1}}) = -x_n {}",
        if base { "holds" } else { "FAILS" },
        failed.join(", "),
        if twisted { "holds exactly" } else { "FAILS" },
    );
    (Err(msg), base && twisted)
}

fn gamma_suite() -> Outcome {
    let start = Instant::now();
    let cfg = GammaConfig::default();
    if cfg.tol_closed != 1e-10 || cfg.tol_series != 1e-8 {
        return Err(format!("tolerances {} / {}", cfg.tol_closed, cfg.tol_series));
    }
    let reps = vec![
        gamma_evaluators(&cfg),
        lift(gamma_torsion_check(&cfg))?,
        lift(akhiezer_gamma_expansion(&cfg, C::new(0.8, 0.0), C::new(0.3, 0.0)))?,
        lift(kernel_basis_checks(&cfg))?,
        lift(lx_operator_checks(&cfg, 0.4))?,
        lift(mellin_shift_check(&cfg, &[(1.0, 0.4), (2.0, 0.5), (2.0, 0.0)]))?,
        lift(hurwitz_identities(&cfg, C::new(0.3, 0.0)))?,
        lift(srivastava_identity(&cfg, &[(C::new(2.0, 0.0), C::new(0.5, 0.0)), (C::new(1.0, 1.0), C::new(0.4, 0.0))]))?,
        lift(classical_functional_relations(&cfg, &[2, 3]))?,
    ];
    let o = all_pass(&reps, format!("{} checks over {} samples at 1e-10 / 1e-8", checks(&reps), cfg.samples.len()));
    within(start.elapsed(), Duration::from_secs(30), o)
}

fn determinism() -> Outcome {
    let cfg = |jobs| {
        let flags = CommonArgs { seed: Some(7), jobs, format: Some(Format::Json), ..Default::default() };
        let suites: Vec<String> =
            ["skew-algebra", "omega-three-ways", "pellarin-identity", "srivastava", "phi-inverse-s"].map(String::from).into();
        let mut c = RunConfig::resolve(&flags, &suites).map_err(|e| e.to_string())?;
        c.samples = 50;
        Ok::<_, String>(c)
    };
    let render = |c: &RunConfig| {
        let mut runs = run_suites(c);
        output::strip_timings(&mut runs);
        output::render(c, &runs)
    };
    let (a, b) = (cfg(None)?, cfg(Some(1))?);
    let (ra, rb, rc) = (render(&a), render(&a), render(&b));
    if ra != rb {
        return Err("two in-process runs differ".into());
    }
    if ra != rc {
        return Err("sequential and parallel runs differ".into());
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = dir.path().join("run.toml");
    let toml = "seed = 3\nsamples = 50\nsuites = [\"skew-algebra\", \"gauss-thakur\", \"hurwitz-identities\"]\n";
    std::fs::write(&config, toml).map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_carlitz");
    let mut outs = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("run{i}.json"));
        let status = Command::new(bin)
            .args(["verify", "--config"])
            .arg(&config)
            .arg("--out")
            .arg(&path)
            .status()
            .map_err(|e| e.to_string())?;
        if status.code() != Some(0) {
            return Err(format!("binary run exited with {status}"));
        }
        outs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    if outs[0] != outs[1] {
        return Err("two binary runs wrote different reports".into());
    }
    Ok(format!("{} bytes identical in-process, across --jobs, and across two binary runs", ra.len()))
}

fn main() -> ExitCode {
    let mut unexpected = 0;
    let mut line = |n: usize, name: &str, f: &mut dyn FnMut() -> (Outcome, bool)| {
        let start = Instant::now();
        let (o, known) = f();
        let secs = start.elapsed().as_secs_f64();
        match o {
            Ok(s) => println!("criterion {n:>2}  PASS  {name}  [{secs:.2} s]  {s}"),
            Err(s) => {
                let tag = if known { "FAIL (known, see README)" } else { "FAIL" };
                println!("criterion {n:>2}  {tag}  {name}  [{secs:.2} s]  {s}");
                if !known {
                    unexpected += 1;
                }
            }
        }
    };
    let plain = |f: fn() -> Outcome| move || (f(), false);
    line(1, "skew-algebra soundness", &mut plain(skew_soundness_200));
    line(2, "Carlitz tables", &mut plain(carlitz_tables));
    line(3, "exponential and logarithm", &mut plain(exp_log));
    line(4, "omega consistency", &mut plain(omega_consistency));
    line(5, "functional relations", &mut plain(functional_relations));
    line(6, "Gauss-Thakur and Kummer", &mut plain(gauss_thakur));
    line(7, "Pellarin identity and zeta", &mut plain(pellarin));
    line(8, "Jacobi theta", &mut jacobi_theta);
    line(9, "gamma suite", &mut plain(gamma_suite));
    line(10, "determinism", &mut plain(determinism));
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
