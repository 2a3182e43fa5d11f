use std::sync::Arc;

use carlitz_core::field::{
    DifferenceRing, FieldTower, FiniteField, FqElem, InversiveRing, LaurentSeries, QDilationElem, QPoly, RadicalScaled,
    RationalFn, EXACT,
};
use proptest::prelude::*;

fn f27() -> FiniteField {
    FiniteField::new(3, 3).unwrap()
}

fn tower() -> Arc<FieldTower> {
    FieldTower::new(3, 2, 40).unwrap()
}

fn elem(f: &FiniteField, e: u32) -> FqElem {
    f.from_encoding(e % f.size()).unwrap()
}

/// Truncated series `Σ c_k u^{v+k}` known below `v + len + slack`.
fn series(t: &Arc<FieldTower>, v: i64, coeffs: &[u32], slack: i64) -> LaurentSeries {
    let size = t.ext().size();
    let terms = coeffs.iter().enumerate().map(|(k, &c)| (v + k as i64, t.ext().from_encoding(c % size).unwrap())).collect();
    LaurentSeries::new(t, terms, v + coeffs.len() as i64 + slack)
}

fn unit_series(t: &Arc<FieldTower>, v: i64, lead: u32, rest: &[u32]) -> LaurentSeries {
    let size = t.ext().size();
    let mut c = vec![1 + lead % (size - 1)];
    c.extend_from_slice(rest);
    series(t, v, &c, 0)
}

proptest! {
    #[test]
    fn finite_field_axioms(a in 0u32..27, b in 0u32..27, c in 0u32..27) {
        let f = f27();
        let (a, b, c) = (elem(&f, a), elem(&f, b), elem(&f, c));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), FqElem::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.from_int(1));
        }
        prop_assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
    }

    #[test]
    fn tower_embedding_is_a_fixed_homomorphism(a in 0u32..3, b in 0u32..3) {
        let t = tower();
        let (a, b) = (elem(t.base(), a), elem(t.base(), b));
        let (ea, eb) = (t.embed(a), t.embed(b));
        prop_assert_eq!(t.embed(t.base().mul(a, b)), t.mul(ea, eb));
        prop_assert_eq!(t.embed(t.base().add(a, b)), t.add(ea, eb));
        prop_assert_eq!(t.frob_q(ea, 1), ea);
    }

    #[test]
    fn laurent_orders_add_and_products_associate(
        v in -5i64..5, w in -5i64..5,
        la in 0u32..8, lb in 0u32..8, lc in 0u32..8,
        ra in prop::collection::vec(0u32..9, 0..6),
        rb in prop::collection::vec(0u32..9, 0..6),
        rc in prop::collection::vec(0u32..9, 0..6),
    ) {
        let t = tower();
        let x = unit_series(&t, v, la, &ra);
        let y = unit_series(&t, w, lb, &rb);
        let z = unit_series(&t, 0, lc, &rc);
        let xy = x.mul(&y);
        prop_assert_eq!(xy.order(), Some(v + w));
        let lhs = xy.mul(&z);
        let rhs = x.mul(&y.mul(&z));
        prop_assert_eq!(lhs.prec(), rhs.prec());
        prop_assert_eq!(lhs.first_mismatch(&rhs), None);
        let sum = x.add(&y);
        prop_assert_eq!(sum.prec(), x.prec().min(y.prec()));
    }

    #[test]
    fn frobenius_is_a_ring_homomorphism(
        v in -4i64..4, ra in prop::collection::vec(0u32..9, 1..6), rb in prop::collection::vec(0u32..9, 1..6), n in 1u32..3,
    ) {
        let t = tower();
        let x = series(&t, v, &ra, 2);
        let y = series(&t, -v, &rb, 3);
        prop_assert_eq!(x.add(&y).frobenius(n).first_mismatch(&x.frobenius(n).add(&y.frobenius(n))), None);
        prop_assert_eq!(x.mul(&y).frobenius(n).first_mismatch(&x.frobenius(n).mul(&y.frobenius(n))), None);
    }

    #[test]
    fn radical_products_associate_and_commute_with_tau(
        ea in 0u64..4, eb in 0u64..4, ec in 0u64..4,
        la in 0u32..8, lb in 0u32..8, lc in 0u32..8,
        ra in prop::collection::vec(0u32..9, 0..4),
        rb in prop::collection::vec(0u32..9, 0..4),
    ) {
        let t = tower();
        let a = RadicalScaled::new(ea, unit_series(&t, -1, la, &ra));
        let b = RadicalScaled::new(eb, unit_series(&t, 2, lb, &rb));
        let c = RadicalScaled::new(ec, unit_series(&t, 0, lc, &[]));
        let l = a.mul(&b).mul(&c);
        let r = a.mul(&b.mul(&c));
        prop_assert_eq!(l.rho_deg(), r.rho_deg());
        prop_assert_eq!(l.rho_deg(), (ea + eb + ec) % 2);
        prop_assert!(l.body().sub(r.body()).is_zero());
        let ab = a.mul(&b).tau(1);
        let ab2 = a.tau(1).mul(&b.tau(1));
        prop_assert_eq!(ab.rho_deg(), ab2.rho_deg());
        prop_assert!(ab.body().sub(ab2.body()).is_zero());
    }

    #[test]
    fn rational_shift_round_trip(num in prop::collection::vec(-5i64..5, 1..4), root in 1i64..6, n in -4i64..4) {
        let f = RationalFn::new(QPoly::from_ints(&num), QPoly::from_ints(&[root, 1])).unwrap();
        prop_assert_eq!(f.shift(n).shift(-n), f.clone());
        let g = RationalFn::var().add(&RationalFn::from_int(root));
        prop_assert_eq!(f.mul(&g).shift(n), f.shift(n).mul(&g.shift(n)));
    }

    #[test]
    fn dilation_is_invertible(terms in prop::collection::vec((-4i64..4, -3i64..4), 1..5), n in 1u32..3) {
        let x = terms.iter().fold(QDilationElem::zero(), |acc, &(m, c)| {
            acc.add(&QDilationElem::monomial(RationalFn::from_poly(QPoly::from_ints(&[c, 1])), m))
        });
        prop_assert_eq!(x.tau(n).tau_inv(n), x.clone());
        prop_assert_eq!(x.tau_inv(n).tau(n), x);
    }
}

#[test]
fn inverting_below_precision_is_an_error() {
    let t = tower();
    let x = LaurentSeries::new(&t, vec![], 3);
    assert!(x.inverse().is_err());
    let y = LaurentSeries::theta_pow(&t, 2);
    assert_eq!(y.inverse().unwrap().prec(), EXACT);
}

#[test]
fn radical_grading_folds_into_body() {
    let t = tower();
    let rho = RadicalScaled::rho(&t);
    let sq = rho.mul(&rho);
    assert_eq!(sq.rho_deg(), 0);
    assert_eq!(sq.into_body(), LaurentSeries::theta(&t).neg());
}
