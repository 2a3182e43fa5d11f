use carlitz_core::anderson_thakur::{
    carlitz_exp, l_series, omega_body, omega_eigen_check, omega_three_ways, pellarin_identity, pi_tilde,
    zeta_specialization,
};
use carlitz_core::field::{FieldTower, FqElem, LaurentSeries, RadicalScaled, TSeries};
use carlitz_core::par::Exec;

#[test]
fn period_is_in_the_kernel_of_the_exponential() {
    for q in [2, 3, 4] {
        let t = FieldTower::new(q, 1, 60).unwrap();
        let pi = pi_tilde(&t, 40).unwrap();
        let e = carlitz_exp(&pi, 40).unwrap();
        assert!(e.value.is_zero(), "q = {q}");
        assert!(e.rel_prec() >= 40);
        let half = carlitz_exp(&pi.div_body(&LaurentSeries::theta(&t)).unwrap(), 40).unwrap();
        assert!(!half.value.is_zero());
    }
}

#[test]
fn omega_body_is_a_unit_with_constant_term_one() {
    let t = FieldTower::new(3, 1, 60).unwrap();
    let b = omega_body(&t, FqElem::ONE, 1, 1, 8, 40).unwrap().body;
    assert_eq!(b.coeff(0), &LaurentSeries::one(&t));
    let inv = b.inverse().unwrap();
    let prod = b.mul(&inv);
    assert_eq!(prod.first_mismatch(&TSeries::constant(LaurentSeries::one(&t), 8)), None);
}

#[test]
fn omega_checks_at_small_precision() {
    for q in [2, 3] {
        let rep = omega_three_ways(q, 6, 24, Exec::available()).unwrap();
        assert!(rep.passed(), "{:?}", rep.checks);
    }
    let t = FieldTower::new(3, 1, 20).unwrap();
    let a = vec![t.base().from_int(1), t.base().from_int(2), t.base().from_int(1)];
    let rep = omega_eigen_check(3, &[a], 6, 24, Exec::available()).unwrap();
    assert!(rep.passed(), "{:?}", rep.checks);
}

#[test]
fn l_series_blocks_shrink_and_paths_agree() {
    let t = FieldTower::new(2, 1, 60).unwrap();
    let seq = l_series(&t, 1, 1, 4, 20, 8, Exec::Sequential).unwrap();
    let par = l_series(&t, 1, 1, 4, 20, 8, Exec::available()).unwrap();
    assert_eq!(seq.value.first_mismatch(&par.value), None);
    assert_eq!(seq.block_vals, par.block_vals);
    assert!(seq.gate_passed);
    let tail = &seq.block_vals[2..];
    assert!(tail.windows(2).all(|w| w[0] <= w[1]), "{:?}", seq.block_vals);
}

#[test]
fn pellarin_and_zeta_at_small_precision() {
    let rep = pellarin_identity(3, 4, 16, 8, Exec::available()).unwrap();
    assert!(rep.passed(), "{:?}", rep.checks);
    let rep = zeta_specialization(2, 1, 2, 16, 8, Exec::available()).unwrap();
    assert!(rep.passed(), "{:?}", rep.checks);
    assert!(zeta_specialization(2, 2, 2, 16, 8, Exec::Sequential).is_err());
}

#[test]
fn radical_degree_of_the_period() {
    let t = FieldTower::new(4, 1, 40).unwrap();
    let pi = pi_tilde(&t, 20).unwrap();
    assert_eq!(pi.rho_deg(), 1);
    let cube: RadicalScaled = pi.pow(3);
    assert_eq!(cube.rho_deg(), 0);
}
