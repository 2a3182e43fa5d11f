//! Randomized checks of the skew-polynomial algebra over each backend.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::field::{DifferenceField, FieldTower, FqElem, LaurentSeries, QDilationElem, QPoly, RationalFn};
use crate::par::{self, Exec};
use crate::report::{CheckRecord, SuiteReport};
use crate::skew::SkewOperator;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// `θ`-polynomials over `F_9` with `τ = Frobenius`.
    Frobenius,
    /// `Q(s)` with `τ f(s) = f(s+1)`.
    Shift,
    /// Laurent polynomials in `x` over `Q(q̂)` with `τ x = q̂ x`.
    Dilation,
}

impl Backend {
    pub const ALL: [Backend; 3] = [Backend::Frobenius, Backend::Shift, Backend::Dilation];

    pub fn name(self) -> &'static str {
        match self {
            Backend::Frobenius => "frobenius",
            Backend::Shift => "shift",
            Backend::Dilation => "dilation",
        }
    }
}

const MAX_OP_DEG: usize = 2;

struct Gen<R> {
    elem: Box<dyn Fn(&mut ChaCha8Rng) -> R + Sync + Send>,
    /// Elements the backend divides by exactly.
    unit: Box<dyn Fn(&mut ChaCha8Rng) -> R + Sync + Send>,
    /// An element with `τ(c) ≠ c`.
    moving: R,
}

fn small_poly(rng: &mut ChaCha8Rng, deg: usize) -> QPoly {
    QPoly::from_ints(&(0..=deg).map(|_| rng.gen_range(-3i64..=3)).collect::<Vec<_>>())
}

fn nonzero_poly(rng: &mut ChaCha8Rng, deg: usize) -> QPoly {
    loop {
        let p = small_poly(rng, deg);
        if !p.is_zero() {
            return p;
        }
    }
}

fn frobenius_gen() -> Result<Gen<LaurentSeries>> {
    let tower: Arc<FieldTower> = FieldTower::new(3, 2, 64)?;
    let size = tower.ext().size();
    let t1 = tower.clone();
    let t2 = tower.clone();
    let elem = move |rng: &mut ChaCha8Rng| {
        let deg = rng.gen_range(0..=2);
        let c: Vec<FqElem> = (0..=deg).map(|_| t1.ext().from_encoding(rng.gen_range(0..size)).unwrap()).collect();
        LaurentSeries::from_theta_poly(&t1, &c)
    };
    let unit = move |rng: &mut ChaCha8Rng| {
        let c = t2.ext().from_encoding(rng.gen_range(1..size)).unwrap();
        LaurentSeries::theta_pow(&t2, rng.gen_range(0..=2)).scale(c)
    };
    Ok(Gen { elem: Box::new(elem), unit: Box::new(unit), moving: LaurentSeries::theta(&tower) })
}

fn shift_gen() -> Gen<RationalFn> {
    let elem = |rng: &mut ChaCha8Rng| {
        let deg = rng.gen_range(0..=2);
        let num = small_poly(rng, deg);
        let den = QPoly::from_ints(&[rng.gen_range(1..=3), 1]);
        let den = if rng.gen_bool(0.5) { den } else { QPoly::one() };
        RationalFn::new(num, den).expect("denominator is nonzero")
    };
    let unit = |rng: &mut ChaCha8Rng| RationalFn::from_poly(nonzero_poly(rng, 1));
    Gen { elem: Box::new(elem), unit: Box::new(unit), moving: RationalFn::var() }
}

fn dilation_gen() -> Gen<QDilationElem> {
    let coeff = |rng: &mut ChaCha8Rng| RationalFn::from_poly(small_poly(rng, 1));
    let elem = move |rng: &mut ChaCha8Rng| {
        let terms: Vec<(i64, RationalFn)> = (0..rng.gen_range(1..=3)).map(|_| (rng.gen_range(-2..=2), coeff(rng))).collect();
        // Repeated exponents would overwrite each other; sum them instead.
        terms.into_iter().fold(QDilationElem::zero(), |acc, (m, c)| acc.add(&QDilationElem::monomial(c, m)))
    };
    let unit = |rng: &mut ChaCha8Rng| {
        let c = RationalFn::from_poly(nonzero_poly(rng, 1));
        QDilationElem::monomial(c, rng.gen_range(-2..=2))
    };
    Gen { elem: Box::new(elem), unit: Box::new(unit), moving: QDilationElem::x() }
}

fn operator<R: DifferenceField>(g: &Gen<R>, rng: &mut ChaCha8Rng) -> SkewOperator<R> {
    let deg = rng.gen_range(0..=MAX_OP_DEG);
    SkewOperator::poly((0..=deg).map(|_| (g.elem)(rng)).collect(), 1)
}

fn divisor<R: DifferenceField>(g: &Gen<R>, rng: &mut ChaCha8Rng) -> SkewOperator<R> {
    let deg = rng.gen_range(0..=MAX_OP_DEG);
    let mut c: Vec<R> = (0..deg).map(|_| (g.elem)(rng)).collect();
    c.push((g.unit)(rng));
    SkewOperator::poly(c, 1)
}

struct TripleOutcome {
    assoc: bool,
    apply: bool,
    division: bool,
}

fn one_triple<R: DifferenceField>(g: &Gen<R>, seed: u64, i: usize) -> Result<TripleOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    let (l, m, n) = (operator(g, &mut rng), operator(g, &mut rng), operator(g, &mut rng));
    let z = (g.elem)(&mut rng);
    let assoc = l.skew_mul(&m).skew_mul(&n).first_mismatch(&l.skew_mul(&m.skew_mul(&n))).is_none();
    let apply = l.skew_mul(&m).apply(&z).agrees_with(&l.apply(&m.apply(&z)));
    let d = divisor(g, &mut rng);
    let (q, r) = l.skew_mul(&n).add(&m).right_divide(&d)?;
    let target = l.skew_mul(&n).add(&m);
    let rebuilt = q.skew_mul(&d).add(&r);
    let small = r.degree().is_none_or(|dr| dr < d.degree().unwrap_or(0));
    let division = small && rebuilt.first_mismatch(&target).is_none() && r.coeffs().iter().all(|c| c.is_exact());
    Ok(TripleOutcome { assoc, apply, division })
}

fn run<R: DifferenceField>(g: Gen<R>, count: usize, seed: u64, exec: Exec) -> Vec<CheckRecord> {
    let outcomes = par::map_range(exec, count, |i| one_triple(&g, seed, i));
    let mut first_err = None;
    let mut fails = [None, None, None];
    for (i, o) in outcomes.into_iter().enumerate() {
        match o {
            Err(e) => {
                first_err.get_or_insert((i, e));
            }
            Ok(o) => {
                for (slot, ok) in fails.iter_mut().zip([o.assoc, o.apply, o.division]) {
                    if !ok && slot.is_none() {
                        *slot = Some(i as i64);
                    }
                }
            }
        }
    }
    let mut out: Vec<CheckRecord> = [
        "(LM)N = L(MN)",
        "apply(LM, z) = apply(L, apply(M, z))",
        "right division: Q M + R = L, deg R < deg M, exactly",
    ]
    .iter()
    .zip(fails)
    .map(|(name, f)| CheckRecord::from_mismatch(format!("{name} on {count} random triples"), f))
    .collect();
    if let Some((i, e)) = first_err {
        out.push(CheckRecord::fail("triples evaluated without error", format!("triple {i}: {e}")));
    }
    let c = SkewOperator::scalar(g.moving.clone(), 1);
    let tau = SkewOperator::monomial(g.moving.one_like(), 1, 1);
    out.push(CheckRecord::from_bool("tau c != c tau for a moving c", tau.skew_mul(&c).first_mismatch(&c.skew_mul(&tau)).is_some()));
    out
}

/// Associativity, apply-composition and right-division reconstruction on `count`
/// seeded random triples. Triple `i` draws from stream `i`, so results do not depend
/// on scheduling.
pub fn skew_soundness(backend: Backend, count: usize, seed: u64, exec: Exec) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("skew-algebra", json!({ "backend": backend.name(), "count": count, "seed": seed }));
    let recs = match backend {
        Backend::Frobenius => run(frobenius_gen()?, count, seed, exec),
        Backend::Shift => run(shift_gen(), count, seed, exec),
        Backend::Dilation => run(dilation_gen(), count, seed, exec),
    };
    rep.extend(recs);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_backend_small() {
        for b in Backend::ALL {
            let rep = skew_soundness(b, 12, 5, Exec::Sequential).unwrap();
            assert!(rep.passed(), "{b:?}: {:?}", rep.checks);
        }
    }

    #[test]
    fn schedule_independent() {
        let a = skew_soundness(Backend::Shift, 16, 9, Exec::Sequential).unwrap();
        let b = skew_soundness(Backend::Shift, 16, 9, Exec::available()).unwrap();
        assert_eq!(a, b);
    }
}
