use criterion::{black_box, criterion_group, criterion_main, Criterion};
use wulff_core::fronts_caustics::{caustic_sample, default_t_grid, lift_integrand};
use wulff_core::integrand::fixtures;
use wulff_core::morse_stability::find_critical_points;
use wulff_core::sphere_geometry::SpherePoint;
use wulff_core::spherical_convexity::{maehara_check, FinitePointSet};
use wulff_core::wulff_duality::{build_wulff, dual_integrand, dual_integrand_with, DualPath};

fn duals(c: &mut Criterion) {
    let ellipse = fixtures::ellipse();
    let ball2 = fixtures::ball(2);
    let mut g = c.benchmark_group("dual");
    g.sample_size(10);
    g.bench_function("ellipse andrews", |b| {
        b.iter(|| dual_integrand_with(black_box(&ellipse), DualPath::Andrews).unwrap())
    });
    g.bench_function("ellipse oracle", |b| {
        b.iter(|| dual_integrand(black_box(&ellipse)).unwrap())
    });
    g.bench_function("ball2 wulff", |b| b.iter(|| build_wulff(black_box(&ball2))));
    g.finish();
}

fn morse(c: &mut Criterion) {
    let g = fixtures::harmonic_stable();
    let mut grp = c.benchmark_group("morse");
    grp.sample_size(10);
    grp.bench_function("harmonic critical points", |b| {
        b.iter(|| find_critical_points(black_box(&g)))
    });
    grp.finish();
}

fn spherical(c: &mut Criterion) {
    let pts = [
        [1.0, 0.2, 0.3],
        [0.2, 1.0, 0.1],
        [0.3, 0.1, 1.0],
        [0.8, 0.7, 0.2],
        [0.5, 0.1, 0.9],
    ]
    .iter()
    .map(|p| SpherePoint::from_coords(p).unwrap())
    .collect();
    let x = FinitePointSet::new(pts).unwrap();
    let mut g = c.benchmark_group("spherical");
    g.sample_size(10);
    g.bench_function("maehara 5 points", |b| b.iter(|| maehara_check(black_box(&x)).unwrap()));
    g.finish();
}

fn fronts(c: &mut Criterion) {
    let f = lift_integrand(&fixtures::translated_disc()).unwrap();
    let ts = default_t_grid();
    let mut g = c.benchmark_group("fronts");
    g.sample_size(10);
    g.bench_function("disc caustic", |b| {
        b.iter(|| caustic_sample(black_box(&f), &ts).unwrap())
    });
    g.finish();
}

criterion_group!(benches, duals, morse, spherical, fronts);
criterion_main!(benches);
