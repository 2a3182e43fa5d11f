//! Suite registry. Each entry drives one verification operation of the core crate.

use std::sync::Arc;
use std::time::Instant;

use carlitz_core::anderson_thakur::{
    cyclotomic_relation, gauss_thakur_sum, kummer_radical_check, l_series, multiplication_relation, omega_eigen_check,
    omega_product, omega_three_ways, pellarin_identity, roots_in_extension, torsion_right_division, zeta_specialization,
};
use carlitz_core::carlitz::{
    akhiezer_baker_check, casoratian, check_coherent, exp_log_identities, jacobi_theta_checks, phi_inverse_s,
    CarlitzContext, CoherentSequence, Convention,
};
use carlitz_core::field::{DifferenceRing, FieldTower, FqElem, LaurentSeries, QPoly, RadicalScaled, RationalFn};
use carlitz_core::gamma::{
    akhiezer_gamma_expansion, classical_functional_relations, gamma_evaluators, gamma_torsion_check,
    hurwitz_identities, kernel_basis_checks, lx_operator_checks, mellin_shift_check, srivastava_identity, GammaConfig,
};
use carlitz_core::par::Exec;
use carlitz_core::report::{CheckRecord, SuiteReport};
use carlitz_core::skew::SkewOperator;
use carlitz_core::soundness::{skew_soundness, Backend};
use carlitz_core::Result;
use num_complex::Complex64 as C;
use serde_json::{json, Value};

use crate::config::RunConfig;

pub struct Entry {
    pub name: &'static str,
    /// The identity checked, in one line.
    pub identity: &'static str,
    pub about: &'static str,
    pub run: fn(&RunConfig, Exec) -> Vec<SuiteReport>,
}

pub static REGISTRY: &[Entry] = &[
    Entry {
        name: "skew-algebra",
        identity: "(LM)N = L(MN), (LM)z = L(Mz), L = QM + R",
        about: "random operator triples over the Frobenius, shift and dilation backends",
        run: skew_algebra,
    },
    Entry {
        name: "leibniz",
        identity: "E_k(xy) = sum_{i+j=k} E_i(x) tau^i E_j(y)",
        about: "higher derivations obey the twisted Leibniz rule",
        run: leibniz,
    },
    Entry {
        name: "phi-tables",
        identity: "phi(s^2), phi(s^3) over Q(s); phi(theta) = theta + tau",
        about: "exact operator tables in both sign conventions",
        run: phi_tables,
    },
    Entry {
        name: "phi-inverse-s",
        identity: "phi(1/s) = sum 1/(s)_{j+1} tau^j",
        about: "coefficients of phi(1/s) against rising and falling factorials",
        run: phi_inverse,
    },
    Entry {
        name: "casoratian",
        identity: "det(E_i z_j) F_n = det(tau^i z_j)",
        about: "casoratian consistency and detection of linear dependence",
        run: casoratian_suite,
    },
    Entry {
        name: "coherent-sequence",
        identity: "phi(theta) x_i = x_{i-1}, phi(a) omega = a(t) omega",
        about: "coefficients of omega as a coherent sequence and its Akhiezer-Baker series",
        run: coherent_sequence,
    },
    Entry {
        name: "exp-log",
        identity: "EL = LE = 1, phi(z)E = Ez, d_n and l_n closed forms",
        about: "Carlitz exponential and logarithm over F_q((1/theta))",
        run: exp_log,
    },
    Entry {
        name: "jacobi-theta",
        identity: "phi(x)(x_1) = 0, phi(x)(x_{n+1}) = x_n",
        about: "theta-coefficient sequence under q-dilation, literal and sign-twisted forms",
        run: jacobi_theta,
    },
    Entry {
        name: "omega-three-ways",
        identity: "omega = product = exp(pi/(theta - t)) = partial fractions",
        about: "three constructions of the Anderson-Thakur function agree",
        run: omega_ways,
    },
    Entry {
        name: "omega-eigen",
        identity: "phi(a) omega = a(t) omega",
        about: "omega is an eigenfunction for every monic a up to deg_max",
        run: omega_eigen,
    },
    Entry {
        name: "multiplication-relation",
        identity: "omega_{tau,theta} = prod_{i<n} tau^i omega_{tau^n,theta} on bodies",
        about: "omega for tau^n against twists of omega, with the radical exponents",
        run: multiplication,
    },
    Entry {
        name: "cyclotomic-relation",
        identity: "omega_{theta^n}(t^n) = prod_i omega_{zeta^i theta}(t)",
        about: "cyclotomic factorization with the prefactor scalar reported",
        run: cyclotomic,
    },
    Entry {
        name: "gauss-thakur",
        identity: "sum_j omega(xi_j) = exp(pi a'/a)",
        about: "Gauss-Thakur sums over the roots of an irreducible a",
        run: gauss_thakur,
    },
    Entry {
        name: "kummer",
        identity: "omega(xi)^{q^d - 1} = prod_{i<d} (xi - theta^{q^i})",
        about: "Kummer radical values of omega at roots of exact degree d",
        run: kummer,
    },
    Entry {
        name: "l-series",
        identity: "L(chi_t, 1) block valuations stabilize",
        about: "Pellarin L-series blocks and the stability gate",
        run: l_series_suite,
    },
    Entry {
        name: "pellarin-identity",
        identity: "L(chi_t, 1)(t - theta) omega + pi = 0",
        about: "Pellarin's identity at the gate-reported precision",
        run: pellarin,
    },
    Entry {
        name: "zeta-specialization",
        identity: "L(chi_t^b, a)(theta) = zeta(a - b)",
        about: "L-series at t = theta against Carlitz zeta values",
        run: zeta,
    },
    Entry {
        name: "right-division",
        identity: "phi(theta^2) = Q (tau - tau(x)/x), x = exp(pi/theta^2)",
        about: "right Euclidean division by the operator killing a torsion point",
        run: right_division,
    },
    Entry {
        name: "gamma-evaluators",
        identity: "Gamma, psi, psi^(n), zeta(z, s) against independent evaluations",
        about: "numeric evaluators cross-checked on the sample set",
        run: gamma_eval,
    },
    Entry {
        name: "gamma-torsion",
        identity: "phi(s^k) kills Gamma^(j), j < k; phi(s) Gamma^(n) = -n Gamma^(n-1)",
        about: "Gamma and its derivatives as torsion for the shift Carlitz module",
        run: gamma_torsion,
    },
    Entry {
        name: "akhiezer-gamma",
        identity: "Gamma(s0 - t) as an Akhiezer-Baker series in t",
        about: "Taylor expansion at s0 and the digamma analogue",
        run: akhiezer_gamma,
    },
    Entry {
        name: "kernel-basis",
        identity: "kernel of phi(f) for split f, including Gamma(s +- i)",
        about: "kernel elements of phi(f) checked on the sample set",
        run: kernel_basis,
    },
    Entry {
        name: "lx-operator",
        identity: "L_x Gamma = (1 - x)^{-s} Gamma, L_x L_{-x} = 1",
        about: "modified logarithm operator in the shift backend",
        run: lx_operator,
    },
    Entry {
        name: "mellin-shift",
        identity: "L_x(Gamma(s) a^{-s}) = Gamma(s) (a - x)^{-s}",
        about: "Mellin-shifted power functions under L_x",
        run: mellin_shift,
    },
    Entry {
        name: "hurwitz-identities",
        identity: "zeta(n+1, s) = (-1)^{n+1} psi^(n)(s)/n!, constant term at z = 1",
        about: "Hurwitz zeta against polygamma, with the epsilon ladder",
        run: hurwitz,
    },
    Entry {
        name: "srivastava",
        identity: "L_x(Gamma(s) zeta(s, a)) = Gamma(s) zeta(s, a - x)",
        about: "Srivastava's shifted Hurwitz series",
        run: srivastava,
    },
    Entry {
        name: "classical-relations",
        identity: "reflection, Gauss multiplication for N = 2, 3",
        about: "classical Gamma and digamma functional equations",
        run: classical,
    },
];

/// Runs `f`, turning an error into a failed check and stamping its wall time on every record.
fn guarded(suite: &str, params: Value, f: impl FnOnce() -> Result<SuiteReport>) -> SuiteReport {
    let start = Instant::now();
    let mut rep = f().unwrap_or_else(|e| {
        let mut r = SuiteReport::new(suite, params);
        r.push(CheckRecord::fail("error", e.to_string()));
        r
    });
    let ms = start.elapsed().as_secs_f64() * 1e3;
    for c in &mut rep.checks {
        c.elapsed_ms.get_or_insert(ms);
    }
    rep
}

fn s() -> RationalFn {
    RationalFn::var()
}

fn poly(c: &[i64]) -> RationalFn {
    RationalFn::from_poly(QPoly::from_ints(c))
}

fn theta_poly(t: &Arc<FieldTower>, c: &[i64]) -> LaurentSeries {
    let c: Vec<FqElem> = c.iter().map(|&x| t.int(x)).collect();
    LaurentSeries::from_theta_poly(t, &c)
}

fn skew_algebra(cfg: &RunConfig, exec: Exec) -> Vec<SuiteReport> {
    Backend::ALL
        .iter()
        .map(|&b| {
            let params = json!({ "backend": b.name(), "count": cfg.samples, "seed": cfg.seed });
            guarded("skew-algebra", params, || skew_soundness(b, cfg.samples, cfg.seed, exec))
        })
        .collect()
}

fn leibniz(cfg: &RunConfig, _: Exec) -> Vec<SuiteReport> {
    let k = cfg.tau_order;
    let mut out = vec![guarded("leibniz", json!({ "backend": "shift", "k_max": k }), || {
        let ctx = CarlitzContext::new(s(), Convention::Old, 1, k + 1);
        let mut rep = SuiteReport::new("leibniz", json!({ "backend": "shift", "k_max": k }));
        let pairs = [
            ("s * s", s(), s()),
            ("(s + 1/s) * s^2", s().add(&s().inv()?), poly(&[0, 0, 1])),
            ("1/(s+1) * (s^3 - 2)", poly(&[1, 1]).inv()?, poly(&[-2, 0, 0, 1])),
        ];
        for (name, x, y) in pairs {
            let m = ctx.leibniz_check(&x, &y, k)?;
            rep.push(CheckRecord::from_mismatch(name, m.map(|i| i as i64)));
        }
        Ok(rep)
    })];
    for q in cfg.qs(&[2, 3]) {
        let u = cfg.u(40);
        let params = json!({ "backend": "frobenius", "q": q, "u_prec": u, "k_max": k });
        out.push(guarded("leibniz", params.clone(), || {
            let t = FieldTower::new(q, cfg.ext_deg, u)?;
            let th = LaurentSeries::theta(&t);
            let ctx = CarlitzContext::new(th, Convention::New, 1, k + 1);
            let mut rep = SuiteReport::new("leibniz", params);
            let pairs = [
                ("(theta^2 + 1) * (theta^3 + theta)", theta_poly(&t, &[1, 0, 1]), theta_poly(&t, &[0, 1, 0, 1])),
                ("1/(theta + 1) * theta^2", theta_poly(&t, &[1, 1]).inverse()?, theta_poly(&t, &[0, 0, 1])),
            ];
            for (name, x, y) in pairs {
                let m = ctx.leibniz_check(&x, &y, k)?;
                rep.push(CheckRecord::from_mismatch(name, m.map(|i| i as i64)));
            }
            Ok(rep)
        }));
    }
    out
}

fn exact_table<R: DifferenceRing>(name: &str, got: &SkewOperator<R>, want: &SkewOperator<R>) -> [CheckRecord; 2] {
    [
        CheckRecord::from_mismatch(name, got.first_mismatch(want).map(|i| i as i64)),
        CheckRecord::from_bool(format!("{name} terminates"), got.is_polynomial()),
    ]
}

fn phi_tables(cfg: &RunConfig, _: Exec) -> Vec<SuiteReport> {
    let order = cfg.tau_order;
    let mut out = vec![guarded("phi-tables", json!({ "backend": "shift", "convention": "old" }), || {
        let mut rep = SuiteReport::new("phi-tables", json!({ "backend": "shift", "convention": "old" }));
        let ctx = CarlitzContext::new(s(), Convention::Old, 1, order + 1);
        let op = |c: Vec<RationalFn>| SkewOperator::poly(c, 1);
        let tables = [
            ("phi(s) = s - tau", s(), op(vec![s(), poly(&[-1])])),
            ("phi(s^2) = s^2 - (2s+1) tau + tau^2", s().mul(&s()), op(vec![poly(&[0, 0, 1]), poly(&[-1, -2]), poly(&[1])])),
            (
                "phi(s^3) = s^3 - (3s^2+3s+1) tau + (3s+3) tau^2 - tau^3",
                s().pow(3)?,
                op(vec![poly(&[0, 0, 0, 1]), poly(&[-1, -3, -3]), poly(&[3, 3]), poly(&[-1])]),
            ),
        ];
        for (name, z, want) in tables {
            rep.extend(exact_table(name, &ctx.phi(&z, order)?, &want));
        }
        Ok(rep)
    })];
    for q in cfg.qs(&[2, 3, 4]) {
        let params = json!({ "backend": "frobenius", "convention": "new", "q": q });
        out.push(guarded("phi-tables", params.clone(), || {
            let mut rep = SuiteReport::new("phi-tables", params);
            let t = FieldTower::new(q, cfg.ext_deg, cfg.u(40))?;
            let th = LaurentSeries::theta(&t);
            let one = LaurentSeries::one(&t);
            let ctx = CarlitzContext::new(th.clone(), Convention::New, 1, order + 1);
            let e1 = th.pow(q).add(&th);
            let theta_sq = th.mul(&th);
            let tables = [
                ("phi(theta) = theta + tau", th.clone(), SkewOperator::poly(vec![th.clone(), one.clone()], 1)),
                ("phi(theta^2) = theta^2 + (theta^q + theta) tau + tau^2", theta_sq.clone(), SkewOperator::poly(vec![theta_sq, e1, one], 1)),
            ];
            for (name, z, want) in tables {
                rep.extend(exact_table(name, &ctx.phi(&z, order)?, &want));
            }
            Ok(rep)
        }));
    }
    out
}

fn phi_inverse(cfg: &RunConfig, _: Exec) -> Vec<SuiteReport> {
    let order = cfg.tau_order;
    vec![guarded("phi-inverse-s", json!({ "tau_order": order }), || {
        let (_, rows) = phi_inverse_s(order)?;
        let mut rep = SuiteReport::new("phi-inverse-s", json!({ "tau_order": order }));
        for r in &rows {
            rep.push(
                CheckRecord::from_bool(format!("coefficient of tau^{} is +1/(s)_{}", r.order, r.order + 1), r.rising_sign == Some(1))
                    .detail(r.coefficient.clone()),
            );
        }
        rep.record("rows", serde_json::to_value(&rows).unwrap_or(Value::Null));
        rep.record(
            "literal_alternating_falling_pattern_holds",
            json!(rows.iter().map(|r| r.displayed_pattern_holds).collect::<Vec<_>>()),
        );
        Ok(rep)
    })]
}

fn casoratian_suite(cfg: &RunConfig, _: Exec) -> Vec<SuiteReport> {
    let mut out = vec![guarded("casoratian", json!({ "backend": "shift" }), || {
        let mut rep = SuiteReport::new("casoratian", json!({ "backend": "shift" }));
        let ctx = CarlitzContext::new(s(), Convention::Old, 1, 6);
        let families = [
            ("1, s, s^2", vec![RationalFn::one(), s(), s().mul(&s())]),
            ("1/s, s, s^2 + 1", vec![s().inv()?, s(), poly(&[1, 0, 1])]),
            ("1/s, 1/(s+1), s^3", vec![s().inv()?, poly(&[1, 1]).inv()?, s().pow(3)?]),
        ];
        for (name, zs) in families {
            let c = casoratian(&ctx, &zs)?;
            rep.push(CheckRecord::from_bool(format!("{name}: det(E) F = det(tau)"), c.consistent));
            rep.push(CheckRecord::from_bool(format!("{name}: independent"), !c.det_e.is_zero()).detail(c.det_e.to_string()));
        }
        let planted = [s(), s().mul(&s()), poly(&[0, 3, -2])];
        let c = casoratian(&ctx, &planted)?;
        rep.push(CheckRecord::from_bool("s, s^2, 3s - 2s^2: vanishes", c.det_e.is_zero() && c.det_tau.is_zero()));
        Ok(rep)
    })];
    for q in cfg.qs(&[2, 3]) {
        let params = json!({ "backend": "frobenius", "q": q });
        out.push(guarded("casoratian", params.clone(), || {
            let mut rep = SuiteReport::new("casoratian", params);
            let t = FieldTower::new(q, cfg.ext_deg, cfg.u(40))?;
            let th = LaurentSeries::theta(&t);
            let ctx = CarlitzContext::new(th.clone(), Convention::New, 1, 6);
            let zs = [LaurentSeries::one(&t), th.clone(), th.mul(&th).add(&th)];
            let c = casoratian(&ctx, &zs)?;
            rep.push(CheckRecord::from_bool("1, theta, theta^2 + theta: det(E) F = det(tau)", c.consistent));
            rep.push(CheckRecord::from_bool("1, theta, theta^2 + theta: det(E) = 1", c.det_e == LaurentSeries::one(&t)));
            Ok(rep)
        }));
    }
    out
}

fn coherent_sequence(cfg: &RunConfig, _: Exec) -> Vec<SuiteReport> {
    let (tp, u) = (cfg.t(8), cfg.u(40));
    cfg.qs(&[2, 3])
        .into_iter()
        .map(|q| {
            let params = json!({ "q": q, "t_prec": tp, "u_prec": u });
            guarded("coherent-sequence", params.clone(), || {
                let mut rep = SuiteReport::new("coherent-sequence", params);
                let t = FieldTower::new(q, 1, u + 20)?;
                let omega = omega_product(&t, tp, u)?;
                let seq = CoherentSequence::new(omega.coeffs().to_vec())?;
                let ctx = CarlitzContext::new(RadicalScaled::from_body(LaurentSeries::theta(&t)), Convention::New, 1, 4);
                rep.extend(check_coherent(&ctx, &seq));
                for a in [[1i64, 1, 0], [1, 1, 1], [2, 0, 1]] {
                    let a: Vec<RadicalScaled> = a.iter().map(|&c| RadicalScaled::from_body(LaurentSeries::constant(&t, t.int(c)))).collect();
                    let a = if a[2].is_zero() { a[..2].to_vec() } else { a };
                    rep.push(akhiezer_baker_check(&ctx, &seq, &a, tp)?);
                }
                Ok(rep)
            })
        })
        .collect()
}

fn exp_log(cfg: &RunConfig, _: Exec) -> Vec<SuiteReport> {
    let (order, u) = (cfg.tau_order, cfg.u(80));
    cfg.qs(&[2, 3, 4])
        .into_iter()
        .map(|q| {
            let params = json!({ "q": q, "ext_deg": cfg.ext_deg, "tau_order": order, "u_prec": u });
            guarded("exp-log", params.clone(), || {
                let t = FieldTower::new(q, cfg.ext_deg, u)?;
                let th = LaurentSeries::theta(&t);
                let ctx = CarlitzContext::new(th.clone(), Convention::New, 1, order + 2);
                let samples = [th.clone(), th.mul(&th).add(&LaurentSeries::one(&t))];
                let mut rep = SuiteReport::new("exp-log", params);
                rep.extend(exp_log_identities(&ctx, order, &samples, Some(u))?);
                Ok(rep)
            })
        })
        .collect()
}

fn jacobi_theta(_: &RunConfig, _: Exec) -> Vec<SuiteReport> {
    let params = json!({ "window": 12, "n_max": 3 });
    vec![guarded("jacobi-theta", params.clone(), || {
        let mut rep = SuiteReport::new("jacobi-theta", params);
        rep.extend(jacobi_theta_checks(12, 3)?);
        Ok(rep)
    })]
}

fn omega_ways(cfg: &RunConfig, exec: Exec) -> Vec<SuiteReport> {
    let (tp, u) = (cfg.t(16), cfg.u(60));
    cfg.qs(&[2, 3])
        .into_iter()
        .map(|q| guarded("omega-three-ways", json!({ "q": q }), || omega_three_ways(q, tp, u, exec)))
        .collect()
}

/// Every monic polynomial over F_q of degree at most `deg`, constant term first.
fn monic_polys(t: &FieldTower, deg: u32) -> Vec<Vec<FqElem>> {
    let field = t.subfield();
    let mut out = vec![vec![t.int(1)]];
    for d in 1..=deg as usize {
        let total = field.len().pow(d as u32);
        for mut i in 0..total {
            let mut a = Vec::with_capacity(d + 1);
            for _ in 0..d {
                a.push(field[i % field.len()]);
                i /= field.len();
            }
            a.push(t.int(1));
            out.push(a);
        }
    }
    out
}

fn omega_eigen(cfg: &RunConfig, exec: Exec) -> Vec<SuiteReport> {
    let (tp, u, deg) = (cfg.t(16), cfg.u(60), cfg.deg(3));
    cfg.qs(&[2, 3])
        .into_iter()
        .map(|q| {
            guarded("omega-eigen", json!({ "q": q, "deg_max": deg }), || {
                let t = FieldTower::new(q, 1, 1)?;
                let polys = monic_polys(&t, deg);
                omega_eigen_check(q, &polys, tp, u, exec)
            })
        })
        .collect()
}

fn multiplication(cfg: &RunConfig, _: Exec) -> Vec<SuiteReport> {
    let (tp, u) = (cfg.t(16), cfg.u(60));
    let mut out = Vec::new();
    for q in cfg.qs(&[3, 4]) {
        for n in [2, 3] {
            out.push(guarded("multiplication-relation", json!({ "q": q, "n": n }), || multiplication_relation(q, n, tp, u)));
        }
    }
    out
}

fn cyclotomic(cfg: &RunConfig, _: Exec) -> Vec<SuiteReport> {
    let (tp, u) = (cfg.t(16), cfg.u(60));
    let cases: Vec<(u64, u32)> = match cfg.q {
        Some(q) => (2..q).filter(|n| (q - 1) % n == 0).map(|n| (q, n as u32)).collect(),
        None => vec![(3, 2), (4, 3), (5, 2), (5, 4)],
    };
    if cases.is_empty() {
        let mut rep = SuiteReport::new("cyclotomic-relation", json!({ "q": cfg.q }));
        rep.push(CheckRecord::skipped("cyclotomic relation", "q - 1 has no divisor n > 1"));
        return vec![rep];
    }
    cases
        .into_iter()
        .map(|(q, n)| guarded("cyclotomic-relation", json!({ "q": q, "n": n }), || cyclotomic_relation(q, n, tp, u)))
        .collect()
}

/// First monic irreducible quadratic over F_q, certified by a root of degree 2.
fn irreducible_quadratic(q: u64) -> Result<Vec<FqElem>> {
    let t = FieldTower::new(q, 2, 1)?;
    monic_polys(&t, 2)
        .into_iter()
        .filter(|a| a.len() == 3)
        .find(|a| roots_in_extension(&t, a).is_ok())
        .ok_or_else(|| carlitz_core::Error::NotIrreducible(format!("no quadratic over F_{q}")))
}

fn gauss_thakur(cfg: &RunConfig, exec: Exec) -> Vec<SuiteReport> {
    let u = cfg.u(40);
    let cases: Vec<(u64, Option<[i64; 3]>)> = match cfg.q {
        Some(q) => vec![(q, None)],
        None => vec![(3, Some([1, 0, 1])), (2, Some([1, 1, 1]))],
    };
    cases
        .into_iter()
        .map(|(q, a)| {
            guarded("gauss-thakur", json!({ "q": q, "a": a }), || {
                let a = match a {
                    Some(c) => {
                        let t = FieldTower::new(q, 1, 1)?;
                        c.iter().map(|&x| t.int(x)).collect()
                    }
                    None => irreducible_quadratic(q)?,
                };
                gauss_thakur_sum(q, &a, u, exec)
            })
        })
        .collect()
}

fn kummer(cfg: &RunConfig, _: Exec) -> Vec<SuiteReport> {
    let u = cfg.u(40);
    let mut out = Vec::new();
    for q in cfg.qs(&[2]) {
        for d in [1, 2] {
            out.push(guarded("kummer", json!({ "q": q, "d": d }), || kummer_radical_check(q, d, None, u)));
        }
    }
    out
}

fn l_series_suite(cfg: &RunConfig, exec: Exec) -> Vec<SuiteReport> {
    let (tp, u, cap) = (cfg.t(10), cfg.u(40), cfg.deg(10));
    cfg.qs(&[2, 3])
        .into_iter()
        .map(|q| {
            let params = json!({ "q": q, "alpha": 1, "beta": 1, "t_prec": tp, "target": u, "deg_cap": cap });
            guarded("l-series", params.clone(), || {
                let t = FieldTower::new(q, 1, u + 8 + tp as i64)?;
                let l = l_series(&t, 1, 1, tp, u, cap, exec)?;
                let mut rep = SuiteReport::new("l-series", params);
                rep.push(
                    CheckRecord::from_bool("stability gate", l.gate_passed)
                        .detail(format!("deg_max {}", l.deg_max()))
                        .precision(l.achieved, u),
                );
                rep.record("block_valuations", json!(l.block_vals));
                Ok(rep)
            })
        })
        .collect()
}

fn pellarin(cfg: &RunConfig, exec: Exec) -> Vec<SuiteReport> {
    let (tp, u, cap) = (cfg.t(10), cfg.u(40), cfg.deg(10));
    cfg.qs(&[2, 3])
        .into_iter()
        .map(|q| guarded("pellarin-identity", json!({ "q": q }), || pellarin_identity(q, tp, u, cap, exec)))
        .collect()
}

fn zeta(cfg: &RunConfig, exec: Exec) -> Vec<SuiteReport> {
    let (u, cap) = (cfg.u(40), cfg.deg(10));
    let mut out = Vec::new();
    for q in cfg.qs(&[2, 3]) {
        for (b, a) in [(0, 1), (0, 2), (1, 2), (1, 3)] {
            let params = json!({ "q": q, "beta": b, "alpha": a });
            out.push(guarded("zeta-specialization", params, || zeta_specialization(q, b, a, u, cap, exec)));
        }
    }
    out
}

fn right_division(cfg: &RunConfig, _: Exec) -> Vec<SuiteReport> {
    let u = cfg.u(60);
    cfg.qs(&[3])
        .into_iter()
        .map(|q| guarded("right-division", json!({ "q": q }), || torsion_right_division(q, u)))
        .collect()
}

fn gamma_config(cfg: &RunConfig, exec: Exec) -> GammaConfig {
    let d = GammaConfig::default();
    let g = GammaConfig {
        tol_closed: cfg.tol.unwrap_or(d.tol_closed),
        tol_series: cfg.tol.unwrap_or(d.tol_series),
        exec,
        ..d
    };
    if cfg.gamma_random_samples > 0 {
        g.with_random_samples(cfg.seed, cfg.gamma_random_samples)
    } else {
        g
    }
}

fn gamma_eval(cfg: &RunConfig, exec: Exec) -> Vec<SuiteReport> {
    let g = gamma_config(cfg, exec);
    vec![guarded("gamma-evaluators", Value::Null, || Ok(gamma_evaluators(&g)))]
}

fn gamma_torsion(cfg: &RunConfig, exec: Exec) -> Vec<SuiteReport> {
    let g = gamma_config(cfg, exec);
    vec![guarded("gamma-torsion", Value::Null, || gamma_torsion_check(&g))]
}

fn akhiezer_gamma(cfg: &RunConfig, exec: Exec) -> Vec<SuiteReport> {
    let g = gamma_config(cfg, exec);
    vec![guarded("akhiezer-gamma", Value::Null, || akhiezer_gamma_expansion(&g, C::new(0.8, 0.0), C::new(0.3, 0.0)))]
}

fn kernel_basis(cfg: &RunConfig, exec: Exec) -> Vec<SuiteReport> {
    let g = gamma_config(cfg, exec);
    vec![guarded("kernel-basis", Value::Null, || kernel_basis_checks(&g))]
}

fn lx_operator(cfg: &RunConfig, exec: Exec) -> Vec<SuiteReport> {
    let g = gamma_config(cfg, exec);
    vec![guarded("lx-operator", Value::Null, || lx_operator_checks(&g, 0.4))]
}

fn mellin_shift(cfg: &RunConfig, exec: Exec) -> Vec<SuiteReport> {
    let g = gamma_config(cfg, exec);
    vec![guarded("mellin-shift", Value::Null, || mellin_shift_check(&g, &[(1.0, 0.4), (2.0, 0.5), (2.0, 0.0)]))]
}

fn hurwitz(cfg: &RunConfig, exec: Exec) -> Vec<SuiteReport> {
    let g = gamma_config(cfg, exec);
    vec![guarded("hurwitz-identities", Value::Null, || hurwitz_identities(&g, C::new(0.3, 0.0)))]
}

fn srivastava(cfg: &RunConfig, exec: Exec) -> Vec<SuiteReport> {
    let g = gamma_config(cfg, exec);
    let cases = [(C::new(2.0, 0.0), C::new(0.5, 0.0)), (C::new(1.0, 1.0), C::new(0.4, 0.0))];
    vec![guarded("srivastava", Value::Null, || srivastava_identity(&g, &cases))]
}

fn classical(cfg: &RunConfig, exec: Exec) -> Vec<SuiteReport> {
    let g = gamma_config(cfg, exec);
    vec![guarded("classical-relations", Value::Null, || classical_functional_relations(&g, &[2, 3]))]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_sorted_output_is_stable() {
        let mut names: Vec<_> = REGISTRY.iter().map(|e| e.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), REGISTRY.len());
        assert!(names.len() >= 15);
    }

    #[test]
    fn monic_poly_count() {
        let t = FieldTower::new(3, 1, 1).unwrap();
        assert_eq!(monic_polys(&t, 3).len(), 1 + 3 + 9 + 27);
    }

    #[test]
    fn quadratic_over_f4() {
        let a = irreducible_quadratic(4).unwrap();
        assert_eq!(a.len(), 3);
    }
}
