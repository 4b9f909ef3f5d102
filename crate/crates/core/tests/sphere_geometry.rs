use std::f64::consts::{PI, TAU};

use proptest::prelude::*;
use wulff_core::error::Error;
use wulff_core::sphere_geometry::{
    arc_point, blowup_conjugate, central_lift, central_project, geodesic_distance, inversion, spherical_blowup,
    Icosphere, PolarPoint, SpherePoint, Vector,
};

fn unit3() -> impl Strategy<Value = SpherePoint> {
    (0.0..TAU, -1.0f64..1.0).prop_map(|(phi, z)| {
        let r = (1.0 - z * z).sqrt();
        SpherePoint::from_coords(&[r * phi.cos(), r * phi.sin(), z]).unwrap()
    })
}

proptest! {
    #[test]
    fn lift_then_project_is_identity(x in -50.0f64..50.0, y in -50.0f64..50.0) {
        let v = Vector::new(&[x, y]);
        let back = central_project(&central_lift(&v)).unwrap().truncate();
        prop_assert!((back - v).norm() <= 1e-12 * (1.0 + v.norm()));
    }

    #[test]
    fn inversion_is_an_involution(phi in 0.0..TAU, r in 0.01f64..100.0) {
        let p = PolarPoint::new(SpherePoint::from_angle(phi), r).unwrap();
        let q = inversion(&inversion(&p));
        prop_assert!((q.to_cartesian() - p.to_cartesian()).norm() < 1e-12 * r.max(1.0));
    }

    #[test]
    fn blowup_is_conjugate_to_inversion(phi in 0.0..TAU, r in 0.05f64..20.0) {
        let p = PolarPoint::new(SpherePoint::from_angle(phi), r).unwrap();
        let a = blowup_conjugate(&p).unwrap().to_cartesian();
        let b = inversion(&p).to_cartesian();
        prop_assert!((a - b).norm() < 1e-10 * b.norm());
    }

    #[test]
    fn blowup_is_orthogonal_and_northern(p in unit3()) {
        prop_assume!(p.coords()[2].abs() < 0.999);
        let q = spherical_blowup(&p).unwrap();
        prop_assert!(q.dot(&p).abs() < 1e-12);
        prop_assert!(q.coords()[2] >= 0.0);
    }

    #[test]
    fn geodesic_triangle_inequality(a in unit3(), b in unit3(), c in unit3()) {
        let (ab, bc, ac) = (geodesic_distance(&a, &b), geodesic_distance(&b, &c), geodesic_distance(&a, &c));
        prop_assert!(ac <= ab + bc + 1e-12);
        prop_assert!((ab - geodesic_distance(&b, &a)).abs() < 1e-15);
        prop_assert!((0.0..=PI).contains(&ab));
    }

    #[test]
    fn arc_point_lies_on_the_minor_arc(a in unit3(), b in unit3(), t in 0.0f64..1.0) {
        prop_assume!(a.dot(&b) > -0.99);
        let m = arc_point(&a, &b, t).unwrap();
        let d = geodesic_distance(&a, &b);
        prop_assert!((geodesic_distance(&a, &m) + geodesic_distance(&m, &b) - d).abs() < 1e-9);
    }
}

#[test]
fn blowup_rejects_the_pole() {
    let n = SpherePoint::north(3);
    assert!(matches!(spherical_blowup(&n), Err(Error::NearPole(_))));
}

#[test]
fn zero_vector_is_not_a_sphere_point() {
    assert!(SpherePoint::new(Vector::zeros(3)).is_err());
    assert!(matches!(
        PolarPoint::new(SpherePoint::from_angle(0.3), -1.0),
        Err(Error::NonPositiveRadius(_))
    ));
}

#[test]
fn icosphere_level_five() {
    let ico = Icosphere::cached(5);
    assert_eq!(ico.len(), 10 * 4usize.pow(5) + 2);
    for (i, nb) in ico.neighbors.iter().enumerate() {
        assert!((5..=6).contains(&nb.len()));
        for &j in nb {
            assert!(ico.neighbors[j].contains(&i));
        }
    }
    assert!(ico.vertices.iter().all(|v| (v.coords().norm() - 1.0).abs() < 1e-14));
}

#[test]
fn lift_of_unit_circle_has_colatitude_quarter_pi() {
    let p = central_lift(&Vector::new(&[0.6, 0.8]));
    assert!((geodesic_distance(&p, &SpherePoint::north(3)) - PI / 4.0).abs() < 1e-15);
}
