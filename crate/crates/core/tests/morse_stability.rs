use std::f64::consts::{PI, TAU};

use proptest::prelude::*;
use wulff_core::error::Error;
use wulff_core::integrand::{fixtures, FourierSeries, Integrand};
use wulff_core::morse_stability::{
    find_critical_points, is_stable, verify_critical_pairing, verify_inequalities, verify_stability_duality,
    MorseTolerances,
};
use wulff_core::wulff_duality::classify;

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

#[test]
fn translated_disc_has_two_critical_points() {
    let cs = find_critical_points(&fixtures::translated_disc());
    assert_eq!(cs.points.len(), 2);
    let (min, max) = (&cs.points[0], &cs.points[1]);
    assert!(angle_gap(min.location.angle(), PI) < 1e-9 && min.index == 0);
    assert!(angle_gap(max.location.angle(), 0.0) < 1e-9 && max.index == 1);
    assert!((min.hessian_eigenvalues[0] - 0.2).abs() < 1e-9);
    assert!((max.hessian_eigenvalues[0] + 0.2).abs() < 1e-9);
    assert!(is_stable(&fixtures::translated_disc()).stable);
}

#[test]
fn ellipse_repeats_values() {
    let s = is_stable(&fixtures::ellipse());
    assert_eq!(s.critical.points.len(), 4);
    assert!(s.all_nondegenerate && !s.values_distinct && !s.stable);
}

#[test]
fn degenerate_fixture_is_found() {
    let cs = find_critical_points(&fixtures::degenerate());
    let d = cs.points.iter().find(|p| p.degenerate).expect("degenerate point");
    assert!(angle_gap(d.location.angle(), 1.5 * PI) < 1e-3);
}

#[test]
fn constant_integrand_is_not_isolated() {
    for n in [1, 2] {
        let cs = find_critical_points(&fixtures::ball(n));
        assert!(cs.non_isolated && !cs.is_morse());
    }
    let r = verify_critical_pairing(&fixtures::ball(1)).unwrap();
    assert!(r.hypothesis_failure.is_some());
}

#[test]
fn harmonic_fixtures() {
    assert!(is_stable(&fixtures::harmonic_stable()).stable);
    let sym = is_stable(&fixtures::harmonic_symmetric());
    assert!(!sym.values_distinct);
}

#[test]
fn ellipse_pairing_reports_instability() {
    let r = verify_critical_pairing(&fixtures::ellipse()).unwrap();
    assert!(r.hypothesis_failure.as_deref().unwrap().starts_with("not stable"));
    assert!(r.pairing_ok());
    assert!(verify_stability_duality(&fixtures::ellipse()).unwrap().passed());
}

#[test]
fn non_strict_inputs_are_rejected() {
    for g in [fixtures::nonconvex(), fixtures::flat_blend()] {
        assert!(matches!(
            verify_stability_duality(&g),
            Err(Error::NotStrictlyConvex { .. })
        ));
        assert!(matches!(verify_inequalities(&g), Err(Error::NotStrictlyConvex { .. })));
    }
}

#[test]
fn tolerances_are_printed() {
    let s = is_stable(&fixtures::translated_disc()).to_string();
    assert!(s.contains(&MorseTolerances::default().to_string()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn random_convex_fourier_pairs(c1 in 0.05f64..0.2, s1 in -0.1f64..0.1, c2 in -0.03f64..0.03, s2 in -0.03f64..0.03) {
        let g = Integrand::fourier(FourierSeries::new(1.0, &[c1, c2], &[s1, s2]).unwrap()).unwrap();
        prop_assume!(classify(&g).is_strictly_convex);
        let t2 = verify_stability_duality(&g).unwrap();
        prop_assert!(t2.passed());
        let t3 = verify_critical_pairing(&g).unwrap();
        prop_assert!(t3.pairing_ok() || t3.hypothesis_failure.is_some());
        prop_assert!(verify_inequalities(&g).unwrap().passed());
    }
}
