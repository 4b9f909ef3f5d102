use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use proptest::prelude::*;
use wulff_core::error::Error;
use wulff_core::fronts_caustics::{
    caustic_sample, colatitude, default_t_grid, direct_pedal, lift_integrand, origin_in_caustic,
    origin_in_symmetry_set, spherical_dual_map, spherical_pedal, symmetry_sample, wave_front, LocusKind, T_STEPS,
};
use wulff_core::integrand::fixtures;
use wulff_core::sphere_geometry::{central_lift, central_project, SpherePoint, Vector};
use wulff_core::wulff_duality::dual_integrand;

#[test]
fn unit_lift_is_quarter_circle() {
    let f = lift_integrand(&fixtures::ball(1)).unwrap();
    for p in &f.points {
        assert!((p.position[2] - 0.5f64.sqrt()).abs() < 1e-14);
    }
}

#[test]
fn disc_lift_at_angle_zero() {
    let f = lift_integrand(&fixtures::translated_disc()).unwrap();
    let want = central_lift(&Vector::new(&[1.25, 0.0])).coords();
    assert!((f.points[0].position - want).norm() < 1e-14);
}

#[test]
fn tangents_are_orthogonal_and_match_differences() {
    for g in [fixtures::translated_disc(), fixtures::harmonic_stable()] {
        let f = lift_integrand(&g).unwrap();
        for p in &f.points {
            for t in &p.tangents {
                assert!(t.dot(&p.position).abs() < 1e-9);
            }
        }
    }
    let f = lift_integrand(&fixtures::ellipse()).unwrap();
    let h = 1e-5;
    for k in 0..32 {
        let a = k as f64 * TAU / 32.0;
        let pos = |x: f64| f.source.position(&SpherePoint::from_angle(x)).unwrap();
        let fd = (pos(a + h) - pos(a - h)) * (0.5 / h);
        let t = f.source.tangents(&SpherePoint::from_angle(a)).unwrap();
        assert!((fd - t[0]).norm() < 1e-6);
    }
}

#[test]
fn dual_is_perpendicular_and_involutive() {
    let f = lift_integrand(&fixtures::translated_disc()).unwrap();
    let d = spherical_dual_map(&f).unwrap();
    for (p, q) in f.points.iter().zip(&d.points) {
        assert!(q.position.dot(&p.position).abs() < 1e-9);
        assert!(q.position.dot(&p.tangents[0]).abs() < 1e-9);
    }
    assert!(spherical_dual_map(&d).unwrap().max_distance(&f) < 1e-8);
    assert_eq!(f.ambiguous_count(), 0);
}

#[test]
fn unit_lift_is_self_pedal() {
    let f = lift_integrand(&fixtures::ball(1)).unwrap();
    assert!(spherical_pedal(&f).unwrap().max_distance(&f) < 1e-9);
}

#[test]
fn pedal_of_dual_projects_to_graph_at_antipode() {
    let g = fixtures::translated_disc();
    let f = lift_integrand(&g).unwrap();
    let pd = spherical_pedal(&spherical_dual_map(&f).unwrap()).unwrap();
    for (th, p) in f.params.iter().zip(pd.positions()) {
        let x = central_project(&p).unwrap().truncate();
        let m = th.antipode();
        assert!((x - m.coords() * g.eval(&m)).norm() < 1e-9);
    }
}

#[test]
fn pedal_of_lift_is_lifted_dual_graph() {
    let g = fixtures::ellipse();
    let delta = dual_integrand(&g).unwrap();
    let f = lift_integrand(&g).unwrap();
    let ped = spherical_pedal(&f).unwrap();
    for (lp, p) in f.points.iter().zip(ped.positions()) {
        let x = central_project(&p).unwrap().truncate();
        // Parametrised by the outer normal of the lifted dual shape.
        let u = SpherePoint::new(x).unwrap();
        assert!((x.norm() - delta.eval(&u)).abs() < 1e-7, "{:?}", lp.position);
    }
}

#[test]
fn colatitude_relation() {
    let g = fixtures::ellipse();
    let f = lift_integrand(&g).unwrap();
    for (th, p) in f.params.iter().zip(f.positions()) {
        let lhs = g.eval(&th.antipode());
        assert!((lhs - (FRAC_PI_2 - colatitude(&p)).tan()).abs() < 1e-12);
    }
}

#[test]
fn wave_front_parameters() {
    let f = lift_integrand(&fixtures::ball(1)).unwrap();
    assert!(matches!(wave_front(&f, PI), Err(Error::WaveParameter(_))));
    assert!(matches!(wave_front(&f, -3.5), Err(Error::WaveParameter(_))));
    let w = wave_front(&f, FRAC_PI_4).unwrap();
    assert!(w
        .points
        .iter()
        .all(|p| (p.position - Vector::basis(3, 2)).norm() < 1e-12));
    // Semigroup: Φ_s ∘ Φ_t = Φ_{s+t}.
    let a = wave_front(&wave_front(&f, 0.3).unwrap(), 0.5).unwrap();
    let b = wave_front(&f, 0.8).unwrap();
    assert!(a.max_distance(&b) < 1e-12);
}

#[test]
fn default_t_grid_shape() {
    let ts = default_t_grid();
    assert_eq!(ts.len(), T_STEPS);
    assert!((ts[0] + FRAC_PI_2).abs() < 1e-15 && (ts[T_STEPS - 1] - FRAC_PI_2).abs() < 1e-15);
    assert!(ts.iter().any(|t| (t - FRAC_PI_4).abs() < 1e-15));
}

#[test]
fn unit_lift_caustic_and_symmetry_collapse() {
    let f = lift_integrand(&fixtures::ball(1)).unwrap();
    let c = caustic_sample(&f, &[FRAC_PI_4, -3.0 * FRAC_PI_4]).unwrap();
    assert_eq!(c.kind, LocusKind::Caustic);
    assert_eq!(c.entries.len(), 2);
    assert!((c.entries[0].position.coords() - Vector::basis(3, 2)).norm() < 1e-12);
    assert!((c.entries[1].position.coords() + Vector::basis(3, 2)).norm() < 1e-12);
    let s = symmetry_sample(&f, &[FRAC_PI_4]).unwrap();
    let m = f.params.len();
    assert_eq!(s.entries.len(), 1);
    assert_eq!(s.entries[0].multiplicity, m * (m - 1) / 2);
}

#[test]
fn disc_caustic_is_nonempty_and_avoids_north() {
    let g = fixtures::translated_disc();
    let f = lift_integrand(&g).unwrap();
    let c = caustic_sample(&f, &default_t_grid()).unwrap();
    assert!(!c.is_empty());
    assert!(c.entries.iter().all(|e| e.multiplicity == 1 && e.params.len() == 1));
    assert!(c.distance_to(&SpherePoint::north(3)) > 0.05);
    assert!(!origin_in_caustic(&g) && !origin_in_symmetry_set(&g));
}

#[test]
fn ellipse_symmetry_set_contains_north() {
    let g = fixtures::ellipse();
    let f = lift_integrand(&g).unwrap();
    let s = symmetry_sample(&f, &default_t_grid()).unwrap();
    assert!(s.distance_to(&SpherePoint::north(3)) < 1e-9);
    for e in &s.entries {
        let gap = (e.params[0] - e.params[1]).rem_euclid(TAU);
        assert!(gap.min(TAU - gap) > 1e-3);
    }
    assert!(origin_in_symmetry_set(&g));
    assert!(origin_in_symmetry_set(&fixtures::ball(1)));
}

#[test]
fn degenerate_fixture_puts_north_on_caustic() {
    let g = fixtures::degenerate();
    assert!(origin_in_caustic(&g));
    assert!(origin_in_caustic(&fixtures::ball(1)));
    let f = lift_integrand(&g).unwrap();
    let c = caustic_sample(&f, &default_t_grid()).unwrap();
    assert!(c.distance_to(&SpherePoint::north(3)) < 1e-6);
}

#[test]
fn origin_membership_is_dual_invariant() {
    for g in [
        fixtures::translated_disc(),
        fixtures::ellipse(),
        fixtures::degenerate(),
        fixtures::harmonic_stable(),
    ] {
        let d = dual_integrand(&g).unwrap();
        assert_eq!(origin_in_caustic(&g), origin_in_caustic(&d));
        assert_eq!(origin_in_symmetry_set(&g), origin_in_symmetry_set(&d));
    }
}

#[test]
fn surfaces_are_rejected_by_curve_scans() {
    let f = lift_integrand(&fixtures::harmonic_stable()).unwrap();
    assert!(matches!(caustic_sample(&f, &[0.1]), Err(Error::WrongDimension { .. })));
    assert!(direct_pedal(&f).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn wave_front_stays_on_sphere(t in -3.0f64..3.0) {
        let f = lift_integrand(&fixtures::ellipse()).unwrap();
        let w = wave_front(&f, t).unwrap();
        for p in &w.points {
            prop_assert!((p.position.norm() - 1.0).abs() < 1e-12);
        }
    }
}
