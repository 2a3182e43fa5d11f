use carlitz_core::carlitz::{
    casoratian, closed_form_d, closed_form_l, exp_log_coeffs, jacobi_theta_checks, phi_inverse_s, CarlitzContext,
    Convention,
};
use carlitz_core::field::{DifferenceRing, FieldTower, LaurentSeries, QPoly, RationalFn};
use proptest::prelude::*;

fn s() -> RationalFn {
    RationalFn::var()
}

fn shift_ctx(convention: Convention) -> CarlitzContext<RationalFn> {
    CarlitzContext::new(s(), convention, 1, 12)
}

fn poly(c: &[i64]) -> RationalFn {
    RationalFn::from_poly(QPoly::from_ints(c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn phi_is_multiplicative(a in prop::collection::vec(-3i64..4, 1..4), b in prop::collection::vec(-3i64..4, 1..4), root in 1i64..4) {
        for conv in [Convention::Old, Convention::New] {
            let ctx = shift_ctx(conv);
            let z = poly(&a);
            let w = poly(&b).div(&poly(&[root, 1])).unwrap();
            let order = 5;
            let lhs = ctx.phi(&z.mul(&w), order).unwrap();
            let rhs = ctx.phi(&z, order).unwrap().skew_mul(&ctx.phi(&w, order).unwrap());
            prop_assert_eq!(lhs.first_mismatch(&rhs), None);
        }
    }

    #[test]
    fn higher_derivations_vanish_above_the_degree(a in prop::collection::vec(-3i64..4, 1..5)) {
        let ctx = shift_ctx(Convention::Old);
        let z = poly(&a);
        let deg = z.num().degree().unwrap_or(0);
        let e = ctx.derivations(&z, deg + 3).unwrap();
        prop_assert!(e[deg + 1..].iter().all(|x| x.is_zero()));
        if !z.is_constant() {
            prop_assert!(!e[deg].is_zero());
        }
    }

    #[test]
    fn leibniz_rule(a in prop::collection::vec(-3i64..4, 1..3), b in prop::collection::vec(-3i64..4, 1..3)) {
        let ctx = shift_ctx(Convention::Old);
        let x = poly(&a).add(&s().inv().unwrap());
        prop_assert_eq!(ctx.leibniz_check(&x, &poly(&b), 4).unwrap(), None);
    }
}

#[test]
fn inverse_s_never_vanishes() {
    let ctx = shift_ctx(Convention::Old);
    let e = ctx.derivations(&s().inv().unwrap(), 8).unwrap();
    assert!(e.iter().all(|x| !x.is_zero()));
    let (_, rows) = phi_inverse_s(6).unwrap();
    assert!(rows.iter().all(|r| r.rising_sign == Some(1)));
    assert!(rows.iter().any(|r| !r.displayed_pattern_holds));
}

#[test]
fn casoratian_detects_dependence() {
    let ctx = shift_ctx(Convention::Old);
    let basis = [RationalFn::one(), s(), s().mul(&s())];
    let c = casoratian(&ctx, &basis).unwrap();
    assert!(!c.det_e.is_zero());
    assert!(c.consistent);
    let planted = [s(), s().mul(&s()), poly(&[0, 3, -2])];
    let c = casoratian(&ctx, &planted).unwrap();
    assert!(c.det_e.is_zero() && c.det_tau.is_zero());
}

#[test]
fn exp_log_duality_over_frobenius() {
    let t = FieldTower::new(3, 1, 80).unwrap();
    let th = LaurentSeries::theta(&t);
    let ctx = CarlitzContext::new(th, Convention::New, 1, 8);
    let c = exp_log_coeffs(&ctx, 5).unwrap();
    assert_eq!(c.closed_form_mismatch, None);
    for n in 0..=5 {
        assert_eq!(c.d[n], closed_form_d(&ctx, n));
        assert_eq!(c.l[n], closed_form_l(&ctx, n));
    }
    // Coefficient of τ^n in E L: Σ_{i+j=n} d_i^{-1} τ^i(l_j^{-1}).
    for n in 1..=5usize {
        let mut acc = LaurentSeries::zero(&t);
        let mut scale = i64::MAX;
        for i in 0..=n {
            let term = c.d[i].inverse().unwrap().mul(&c.l[n - i].inverse().unwrap().tau(i as u32));
            scale = scale.min(term.val());
            acc = acc.add(&term);
        }
        assert!(acc.is_zero() && acc.prec() - scale >= 70, "n = {n}: {acc:?}");
    }
}

#[test]
fn theta_sequence_reports_the_twisted_relation() {
    let recs = jacobi_theta_checks(12, 3).unwrap();
    assert!(recs.iter().filter(|r| r.name.contains("= -x") || r.name.ends_with("= 0")).all(|r| r.passed()));
    assert!(recs.iter().filter(|r| r.name.contains(") = x_")).all(|r| !r.passed()));
}
