mod common;

use common::{leibniz_det, random_points, random_radii, small_rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use soddy_core::proof::{
    block_rule_determinant, build_p, build_q, check_reduction_chain, check_s_properties, check_uwu_congruence,
};
use soddy_core::tangency::validate_radii;
use soddy_core::{determinant, Matrix, RadiusValidation, Rational};

#[test]
fn reduction_chain_holds_for_random_radii() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc4a1);
    for n in 1..=6 {
        for _ in 0..200 {
            let r = validate_radii(random_radii(&mut rng, n + 2), n, RadiusValidation::Strict).unwrap();
            let report = check_reduction_chain(&r).unwrap();
            let failed: Vec<_> = report.failures().map(|c| c.name.clone()).collect();
            assert!(failed.is_empty(), "n={n} radii={:?} failed {failed:?}", r.values());
        }
    }
}

#[test]
fn chain_reports_expected_steps() {
    let r = validate_radii(vec![Rational::from_integer(1.into()); 4], 2, RadiusValidation::Strict).unwrap();
    let names: Vec<String> = check_reduction_chain(&r).unwrap().checks.iter().map(|c| c.name.clone()).collect();
    for step in ["PtDP", "QtPtDPQ=[[0,Rt],[R,S]]", "det(P)=1", "det(Q)=prod(1/r)", "det(D)=(prod r)^2*chain"] {
        assert!(names.iter().any(|n| n == step), "missing {step}");
    }
    assert!(names.iter().any(|n| n == "-det(S)*Rt*Sinv*R=16*Rt*S*R"));
}

#[test]
fn congruence_determinants_bookkeep() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd37);
    for n in 1..=6 {
        for _ in 0..20 {
            let r = validate_radii(random_radii(&mut rng, n + 2), n, RadiusValidation::Strict).unwrap();
            let p = build_p(&r);
            let q = build_q(&r);
            assert_eq!(determinant(&p).unwrap(), Rational::from_integer(1.into()));
            let prod_inv = r.values().iter().fold(Rational::from_integer(1.into()), |acc, x| acc / x.clone());
            assert_eq!(determinant(&q).unwrap(), prod_inv);
        }
    }
}

#[test]
fn s_properties_for_small_dimensions() {
    for n in 1..=8 {
        let report = check_s_properties(n).unwrap();
        assert!(report.all_passed(), "n={n}");
        assert_eq!(report.len(), if n == 2 { 5 } else { 2 });
    }
}

#[test]
fn uwu_congruence_for_random_simplices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b0);
    for dim in 2..=4 {
        for _ in 0..100 {
            let points = random_points(&mut rng, dim + 1, dim);
            let report = check_uwu_congruence(&points).unwrap();
            assert!(report.all_passed(), "dim={dim} points={points:?}");
        }
    }
}

#[test]
fn block_rule_matches_direct_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xb10c);
    let mut checked = 0;
    while checked < 100 {
        let b = Matrix::from_fn(5, 5, |_, _| small_rational(&mut rng));
        let m = Matrix::from_fn(5, 5, |i, j| b[(i, j)].clone() + b[(j, i)].clone());
        match block_rule_determinant(&m, 1) {
            Ok(det) => {
                assert_eq!(det, leibniz_det(&m));
                checked += 1;
            }
            Err(e) => assert_eq!(e.kind(), "singular"),
        }
    }
}
