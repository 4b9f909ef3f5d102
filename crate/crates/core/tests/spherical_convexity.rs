use proptest::prelude::*;
use wulff_core::error::Error;
use wulff_core::integrand::fixtures;
use wulff_core::sphere_geometry::{arc_point, SpherePoint, Vector};
use wulff_core::spherical_convexity::{
    double_polar_check, hemisphere_contains, lifted_wulff, maehara_check, spherical_convex_hull, spherical_wulff,
    DoublePolarStatus, FinitePointSet, SphericalRegion,
};
use wulff_core::wulff_duality::{build_wulff, dual_integrand};

fn p(c: &[f64]) -> SpherePoint {
    SpherePoint::from_coords(c).unwrap()
}

#[test]
fn hemisphere_membership() {
    let e1 = p(&[1.0, 0.0, 0.0]);
    let e2 = p(&[0.0, 1.0, 0.0]);
    assert!(hemisphere_contains(&e1, &e1));
    assert!(!hemisphere_contains(&e1, &e1.antipode()));
    assert!(hemisphere_contains(&e1, &e2));
}

#[test]
fn polar_of_singleton_is_hemisphere() {
    let n = p(&[0.0, 0.0, 1.0]);
    let x = FinitePointSet::new(vec![n]).unwrap();
    let polar = x.polar().unwrap();
    let hemi = SphericalRegion::from_predicate(|q| q.coords()[2] >= 0.0);
    assert!(polar.compare(&hemi).agree());
    assert!(maehara_check(&x).unwrap().agree());
    assert!(matches!(double_polar_check(&x).unwrap(), DoublePolarStatus::Degenerate));
}

#[test]
fn polar_of_full_sphere_is_empty() {
    assert!(SphericalRegion::full().polar().is_empty());
}

#[test]
fn hull_of_two_basis_vectors_is_quarter_arc() {
    let (e1, e2) = (p(&[1.0, 0.0, 0.0]), p(&[0.0, 1.0, 0.0]));
    let x = FinitePointSet::new(vec![e1, e2]).unwrap();
    for k in 0..=10 {
        assert!(x.hull_contains(&arc_point(&e1, &e2, k as f64 / 10.0).unwrap()));
    }
    assert!(!x.hull_contains(&p(&[1.0, 1.0, 0.3])));
    assert!(!x.hull_contains(&p(&[1.0, -0.1, 0.0])));
    assert!(maehara_check(&x).unwrap().agree());
}

#[test]
fn antipodal_pair_is_not_hemispherical() {
    let n = p(&[0.0, 0.0, 1.0]);
    assert!(matches!(
        FinitePointSet::new(vec![n, n.antipode()]),
        Err(Error::NotHemispherical)
    ));
}

#[test]
fn polar_reverses_inclusion() {
    let small = FinitePointSet::new(vec![p(&[0.0, 0.0, 1.0]), p(&[0.2, 0.0, 1.0])]).unwrap();
    let big = FinitePointSet::new(vec![p(&[0.0, 0.0, 1.0]), p(&[0.2, 0.0, 1.0]), p(&[0.0, 0.3, 1.0])]).unwrap();
    let (hs, hb) = (
        spherical_convex_hull(&small).unwrap(),
        spherical_convex_hull(&big).unwrap(),
    );
    assert!(hs.region.is_subset_of(&hb.region));
    assert!(hb.region.polar().is_subset_of(&hs.region.polar()));
}

#[test]
fn unit_integrand_gives_quarter_cap() {
    let w = spherical_wulff(&fixtures::ball(1)).unwrap();
    let cap = SphericalRegion::from_predicate(|q| q.coords()[2] >= 0.5f64.sqrt());
    assert!(w.compare(&cap).agree());
}

#[test]
fn spherical_wulff_matches_lifted_wulff_and_is_its_own_double_polar() {
    let g = fixtures::translated_disc();
    let w = spherical_wulff(&g).unwrap();
    let lifted = lifted_wulff(&build_wulff(&g)).unwrap();
    assert!(w.compare(&lifted).agree());
    assert!(w.compare(&w.polar().polar()).agree());
    // The polar of the spherical Wulff shape is the lifted dual Wulff shape.
    let dual = lifted_wulff(&build_wulff(&dual_integrand(&g).unwrap())).unwrap();
    assert!(w.polar().compare(&dual).agree());
}

fn hemispherical_set() -> impl Strategy<Value = Vec<[f64; 3]>> {
    prop::collection::vec(
        (-0.8f64..0.8, -0.8f64..0.8, 0.2f64..1.0).prop_map(|(x, y, z)| [x, y, z]),
        3..=6,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn maehara_and_double_polar_hold(raw in hemispherical_set()) {
        let x = FinitePointSet::new(raw.iter().map(|c| p(c)).collect()).unwrap();
        prop_assert!(maehara_check(&x).unwrap().agree());
        prop_assert!(double_polar_check(&x).unwrap().agree() != Some(false));
    }

    #[test]
    fn hull_of_hull_is_hull(raw in hemispherical_set(), w in prop::collection::vec(0.0f64..1.0, 6)) {
        let pts: Vec<_> = raw.iter().map(|c| p(c)).collect();
        let x = FinitePointSet::new(pts.clone()).unwrap();
        // Points of the hull added back do not grow it.
        let mut combo = Vector::zeros(3);
        for (q, t) in pts.iter().zip(&w) {
            combo += q.coords() * (*t + 1e-3);
        }
        let inner = SpherePoint::new(combo).unwrap();
        prop_assert!(x.hull_contains(&inner));
        let mut grown = pts.clone();
        grown.push(inner);
        let y = FinitePointSet::new(grown).unwrap();
        let (a, b) = (spherical_convex_hull(&x).unwrap(), spherical_convex_hull(&y).unwrap());
        prop_assert!(a.region.compare(&b.region).agree());
    }
}
