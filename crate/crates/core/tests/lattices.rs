use std::time::Duration;

use golden_core::constructions::{e8_golden_inputs, f4, f4_perp_f4, run_candidate, GoldenCandidate};
use golden_core::hmf::{extremal_form, generators};
use golden_core::lattice::{
    golden_check, goldenex, hilbert_theta, minimum, modular_family, modularity_check, restricted_theta_matches,
    theta_counts, trace_identity_check, enumerate_short, Verdict,
};
use golden_core::{KElem, RElem};
use num_bigint::BigInt;
use num_rational::BigRational;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[test]
fn f4_pipeline() {
    let g = f4();
    assert!(g.is_even_unimodular());
    let r = golden_check(&g, 4).unwrap();
    assert!(r.golden, "{:?}", r.first_difference);
    assert_eq!(r.min_eta, Some((1, 240)));
    assert_eq!(r.min_one, Some((2, 120)));
    assert_eq!(r.extremal_unimodular(), Some(true));
    assert_eq!(r.minima_bounds_hold(), Some(true));

    let t1 = g.trace_gram(&KElem::one()).unwrap();
    assert_eq!(t1.det(), BigInt::from(625));
    assert_eq!(minimum(&t1).unwrap(), (2, 120));
    assert!(modularity_check(&t1, 5, Duration::from_secs(30)).unwrap().is_modular());
    let s = t1.dual_basis_matrix().unwrap();
    assert!(s.iter().flatten().all(|x| (x * rat(5)).is_integer()));
}

#[test]
fn theta_of_f4_is_a2() {
    let g = f4();
    let th = hilbert_theta(&g, 4).unwrap();
    let a2 = generators(4).unwrap().a2.clone();
    assert_eq!(th, a2);
    assert_eq!(th.coeff_at(1, 2), rat(120));
    assert_eq!(th.coeff_at(1, 3), rat(120));
    assert_eq!(th.coeff_at(2, 3), rat(120));
    assert!(th.check_symmetric());
    assert!(th.check_unit_invariant());
    assert!(restricted_theta_matches(&th, &g.trace_gram(&KElem::eta_inv()).unwrap()).unwrap());
}

#[test]
fn f4_perp_f4_is_golden_of_weight_four() {
    let g = f4_perp_f4();
    let r = golden_check(&g, 3).unwrap();
    assert!(r.golden);
    assert_eq!(r.min_eta, Some((1, 480)));
    assert_eq!(r.min_one, Some((2, 240)));
    let e = extremal_form(4, 3).unwrap();
    assert_eq!((e.s_eta, e.s_one, e.pm.symbol()), (480, 240, "+".to_string()));
}

#[test]
fn theta_is_multiplicative() {
    let g = f4();
    let prec = 3;
    let a = hilbert_theta(&g, prec).unwrap();
    let b = hilbert_theta(&f4_perp_f4(), prec).unwrap();
    assert_eq!(a.mul(&a), b);
}

#[test]
fn unit_rescaling_keeps_theta() {
    // θ²Q has the same series: the relabelling X ↦ θ²X is a unit action
    let g = f4();
    let theta2 = RElem::THETA * RElem::THETA;
    let h = g.scaled(theta2);
    assert!(h.is_even_unimodular());
    assert_eq!(hilbert_theta(&h, 3).unwrap(), hilbert_theta(&g, 3).unwrap());
}

#[test]
fn trace_identities_on_short_vectors() {
    let g = f4();
    let t = g.trace_gram(&KElem::eta_inv()).unwrap();
    let sv = enumerate_short(&t, 2).unwrap();
    let samples: Vec<Vec<i64>> = sv.iter().map(|(x, _)| x).collect();
    assert!(trace_identity_check(&g, &samples).unwrap());
}

#[test]
fn goldenex_round_trip() {
    let inputs = e8_golden_inputs().unwrap();
    let s = goldenex(&inputs.gram, &inputs.t).unwrap();
    assert_eq!(s.gram.n, 4);
    let th = hilbert_theta(&s.gram, 4).unwrap();
    assert_eq!(th, generators(4).unwrap().a2.clone());
    let check = s.gram.trace_gram(&KElem::eta_inv()).unwrap();
    assert_eq!(check, inputs.gram.transform(&s.basis_change));
    let sigma = s.transport(&inputs.sigma).unwrap();
    assert!(golden_core::lattice::galois_check(&s.gram, &sigma).unwrap());

    let report = run_candidate(&GoldenCandidate::from_inputs("e8", &inputs), 3).unwrap();
    assert!(report.golden.golden);
    assert_eq!(report.galois, Some(true));
}

#[test]
fn family_members() {
    let g = f4();
    for a in 0..=3 {
        let c = modular_family(&g, a, Some((1, 2)), Duration::from_secs(60)).unwrap();
        assert_eq!(c.det, BigInt::from(c.p).pow(4), "a = {a}");
        assert!(c.det_ok);
        assert_eq!(c.min_ok(), Some(true), "a = {a}: min {}", c.min);
        assert!(matches!(c.modular, Verdict::Modular { .. }), "a = {a}: {:?}", c.modular);
        assert_eq!(c.min, 2 + a);
    }
    let c0 = modular_family(&g, 0, Some((1, 2)), Duration::from_secs(5)).unwrap();
    assert_eq!((c0.p, c0.min, c0.kissing), (5, 2, 120));
    let c1 = modular_family(&g, 1, Some((1, 2)), Duration::from_secs(5)).unwrap();
    assert_eq!(c1.p, 11);
    assert!(c1.min >= 3);
    let counts = theta_counts(&c1.gram, 3).unwrap();
    assert_eq!(counts[1..3], [0, 0]);
}

