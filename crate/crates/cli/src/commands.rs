use std::fmt::Write as _;

use wulff_core::error::{Error, Result};
use wulff_core::fronts_caustics::{
    caustic_sample, default_t_grid, hausdorff, lift_integrand_on, origin_in_caustic, origin_in_symmetry_set,
    spherical_dual_map, symmetry_sample, wave_front, FrontSample, SingularLocus,
};
use wulff_core::integrand::Integrand;
use wulff_core::morse_stability::{
    is_stable_with, verify_critical_pairing_with, verify_inequalities_with, verify_stability_duality_with,
    MorseTolerances,
};
use wulff_core::sphere_geometry::{circle_grid, Icosphere, SpherePoint, Vector};
use wulff_core::spherical_convexity::{
    double_polar_check, maehara_check, spherical_convex_hull, DoublePolarStatus, FinitePointSet,
};
use wulff_core::wulff_duality::{
    build_wulff_with, classify, dual_integrand, dual_integrand_with, dual_smoothness_probe, sup_distance,
    ConvexityReport, DualPath, SearchMode,
};

use crate::config::{Format, RunConfig};
use crate::export::{obj_mesh, obj_points, obj_polylines, svg, write_file, ObjCurve, Polyline};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_HYPOTHESIS: u8 = 3;

/// Involution residual reported as acceptable by `dual`.
pub const INVOLUTION_TOL: f64 = 1e-7;

/// Exit code for errors not handled by the command itself.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::Io { .. }
        | Error::InvalidArgument(_)
        | Error::WaveParameter(_)
        | Error::DimensionMismatch { .. }
        | Error::DegenerateVector => EXIT_USAGE,
        _ => EXIT_HYPOTHESIS,
    }
}

fn morse_tolerances(cfg: &RunConfig) -> MorseTolerances {
    let mut t = MorseTolerances::default();
    if let Some(tol) = cfg.tol {
        t.degenerate_tol = tol;
        t.value_tol = tol;
    }
    t
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn place(p: &SpherePoint) -> String {
    let c = p.coords();
    if c.dim() == 2 {
        format!("angle ≈ {:.3}", p.angle())
    } else {
        format!("({:.3}, {:.3}, {:.3})", c[0], c[1], c[2])
    }
}

fn convexity_lines(c: &ConvexityReport) -> (String, String) {
    let convex = if c.is_convex_integrand {
        "convex: yes".to_string()
    } else {
        format!("convex: no (witness {}, margin {:.3e})", place(&c.witness), c.margin)
    };
    let strict = if c.is_strictly_convex {
        "strictly: yes".to_string()
    } else {
        format!(
            "strictly: no (curvature {:.3e} at {})",
            c.curvature,
            place(&c.curvature_witness)
        )
    };
    (convex, strict)
}

pub fn check(cfg: &RunConfig) -> Result<u8> {
    let g = cfg.load_integrand()?;
    let tol = morse_tolerances(cfg);
    let c = classify(&g);
    let s = is_stable_with(&g, &tol);
    println!("integrand: {}", g.describe());
    println!(
        "convex: {}, strictly: {}, stable: {}",
        yes_no(c.is_convex_integrand),
        yes_no(c.is_strictly_convex),
        yes_no(s.stable)
    );
    let (convex, strict) = convexity_lines(&c);
    println!("{convex}\n{strict}");
    println!("{s}");
    Ok(if c.is_convex_integrand && c.is_strictly_convex && s.stable {
        EXIT_OK
    } else {
        EXIT_FAIL
    })
}

fn sample_grid(g: &Integrand, cfg: &RunConfig) -> Result<Vec<SpherePoint>> {
    let k = cfg.grid_for(g.dim())?;
    Ok(if g.dim() == 1 {
        circle_grid(k)
    } else {
        Icosphere::cached(k).vertices.clone()
    })
}

fn samples_csv(dirs: &[SpherePoint], values: impl Iterator<Item = f64>, name: &str) -> String {
    let mut s = String::new();
    let planar = dirs.first().is_some_and(|d| d.ambient_dim() == 2);
    if planar {
        let _ = writeln!(s, "theta,{name}");
    } else {
        let _ = writeln!(s, "x,y,z,{name}");
    }
    for (d, v) in dirs.iter().zip(values) {
        if planar {
            let _ = writeln!(s, "{:.12},{v:.12}", d.angle());
        } else {
            let c = d.coords();
            let _ = writeln!(s, "{:.12},{:.12},{:.12},{v:.12}", c[0], c[1], c[2]);
        }
    }
    s
}

/// graph(γ), inv(graph γ) and ∂𝒲_γ in one planar scene.
fn wulff_scene(g: &Integrand, dirs: &[SpherePoint], radii: &[f64]) -> String {
    let xy = |v: Vector| [v[0], v[1]];
    let graph = dirs.iter().map(|d| xy(d.coords() * g.eval(d))).collect();
    let inv = dirs.iter().map(|d| xy(d.coords() * (1.0 / g.eval(d)))).collect();
    let boundary = dirs.iter().zip(radii).map(|(d, r)| xy(d.coords() * *r)).collect();
    svg(&[
        Polyline {
            label: "graph".into(),
            color: "#888888",
            points: graph,
            closed: true,
        },
        Polyline {
            label: "inverted graph".into(),
            color: "#1f77b4",
            points: inv,
            closed: true,
        },
        Polyline {
            label: "Wulff boundary".into(),
            color: "#d62728",
            points: boundary,
            closed: true,
        },
    ])
}

fn write_body(cfg: &RunConfig, stem: &str, g: &Integrand, dirs: &[SpherePoint]) -> Result<()> {
    let body = build_wulff_with(g, dirs.to_vec(), SearchMode::Local);
    let radii = body.radii();
    if cfg.wants(Format::Csv) {
        write_file(
            &cfg.out.join(format!("{stem}.csv")),
            &samples_csv(dirs, radii.iter().copied(), "radius"),
        )?;
    }
    if g.dim() == 1 && cfg.wants(Format::Svg) {
        write_file(&cfg.out.join(format!("{stem}.svg")), &wulff_scene(g, dirs, radii))?;
    }
    if g.dim() == 2 && cfg.wants(Format::Obj) {
        let level = cfg.grid_for(2)?;
        let ico = Icosphere::cached(level);
        let verts: Vec<Vector> = body.boundary_points();
        write_file(
            &cfg.out.join(format!("{stem}.obj")),
            &obj_mesh(stem, &verts, &ico.faces),
        )?;
    }
    Ok(())
}

pub fn dual(cfg: &RunConfig) -> Result<u8> {
    let g = cfg.load_integrand()?;
    let c = classify(&g);
    println!("integrand: {}", g.describe());
    if !c.is_convex_integrand {
        println!(
            "not a convex integrand: margin {:.3e} at {}",
            c.margin,
            place(&c.witness)
        );
        return Ok(EXIT_FAIL);
    }
    let path = if c.is_strictly_convex {
        println!("path: andrews");
        DualPath::Andrews
    } else {
        println!("path: oracle (fast path refused: not strictly convex)");
        DualPath::Oracle
    };
    let delta = dual_integrand_with(&g, path)?;
    let back = dual_integrand(&delta)?;
    let residual = sup_distance(&back, &g);
    let verdict = if residual < INVOLUTION_TOL { "ok" } else { "above" };
    println!("involution residual: {residual:.3e} ({verdict} {INVOLUTION_TOL:e})");
    if !c.is_strictly_convex {
        let probe = dual_smoothness_probe(&g)?;
        println!("gradient-jump probe:\n{probe}");
    }
    let dirs = sample_grid(&g, cfg)?;
    cfg.ensure_out()?;
    if cfg.wants(Format::Csv) {
        let values = dirs.iter().map(|d| delta.eval(d));
        write_file(&cfg.out.join("delta.csv"), &samples_csv(&dirs, values, "delta"))?;
    }
    write_body(cfg, "wulff", &g, &dirs)?;
    write_body(cfg, "dual_wulff", &delta, &dirs)?;
    println!("wrote {}", cfg.out.display());
    Ok(EXIT_OK)
}

enum Verdict {
    Pass,
    Fail,
    Hypothesis(String),
}

fn report_suite(name: &str, v: &Verdict, body: &str) {
    match v {
        Verdict::Pass => println!("[PASS] {name}"),
        Verdict::Fail => println!("[FAIL] {name}"),
        Verdict::Hypothesis(m) => println!("[SKIP] {name}: hypothesis failed: {m}"),
    }
    if !body.is_empty() {
        println!("{body}");
    }
}

pub fn verify(cfg: &RunConfig) -> Result<u8> {
    let g = cfg.load_integrand()?;
    let tol = morse_tolerances(cfg);
    println!("integrand: {}", g.describe());
    println!("{tol}");
    let mut verdicts = Vec::new();

    let (v, body) = match dual_smoothness_probe(&g) {
        Ok(p) => (
            if p.consistent() { Verdict::Pass } else { Verdict::Fail },
            p.to_string(),
        ),
        Err(e) => (Verdict::Hypothesis(e.to_string()), String::new()),
    };
    report_suite("smoothness: dual gradient-jump probe", &v, &body);
    verdicts.push(v);

    let (v, body) = match verify_stability_duality_with(&g, &tol) {
        Ok(r) => (if r.passed() { Verdict::Pass } else { Verdict::Fail }, r.to_string()),
        Err(e) => (Verdict::Hypothesis(e.to_string()), String::new()),
    };
    report_suite("stability-duality: γ and δ agree", &v, &body);
    verdicts.push(v);

    let (v, body) = match verify_critical_pairing_with(&g, &tol) {
        Ok(r) => match &r.hypothesis_failure {
            Some(m) => (Verdict::Hypothesis(m.clone()), r.to_string()),
            None => (if r.passed() { Verdict::Pass } else { Verdict::Fail }, r.to_string()),
        },
        Err(e) => (Verdict::Hypothesis(e.to_string()), String::new()),
    };
    report_suite("critical-pairing: θ and −θ", &v, &body);
    verdicts.push(v);

    let (v, body) = match verify_inequalities_with(&g, &tol) {
        Ok(r) => (if r.passed() { Verdict::Pass } else { Verdict::Fail }, r.to_string()),
        Err(e) => (Verdict::Hypothesis(e.to_string()), String::new()),
    };
    report_suite("inequalities: γ against 1/δ", &v, &body);
    verdicts.push(v);

    let failed = verdicts.iter().any(|v| matches!(v, Verdict::Fail));
    let skipped = verdicts.iter().any(|v| matches!(v, Verdict::Hypothesis(_)));
    Ok(if failed {
        EXIT_FAIL
    } else if skipped {
        EXIT_HYPOTHESIS
    } else {
        EXIT_OK
    })
}

fn curve_lift(cfg: &RunConfig, what: &str) -> Result<Option<(Integrand, FrontSample)>> {
    let g = cfg.load_integrand()?;
    if g.dim() != 1 {
        eprintln!("{what} supports n = 1 integrands only (got n = {})", g.dim());
        return Ok(None);
    }
    let m = cfg.grid_for(1)?;
    let f = lift_integrand_on(&g, circle_grid(m))?;
    Ok(Some((g, f)))
}

/// Nine fronts spread over [−0.4, 0.4].
fn scene_ts(cfg: &RunConfig) -> Vec<f64> {
    cfg.t
        .clone()
        .unwrap_or_else(|| (0..9).map(|k| -0.4 + 0.1 * k as f64).collect())
}

fn spread(f: &FrontSample) -> f64 {
    let mean = f.points.iter().fold(Vector::zeros(3), |a, p| a + p.position);
    match mean.normalized() {
        Some(c) => f.points.iter().map(|p| (p.position - c).norm()).fold(0.0, f64::max),
        None => f64::INFINITY,
    }
}

fn wave_fronts(f: &FrontSample, ts: &[f64]) -> Result<Vec<(f64, FrontSample)>> {
    ts.iter().map(|&t| Ok((t, wave_front(f, t)?))).collect()
}

fn front_curves(lift: &FrontSample, dual: &FrontSample, fronts: &[(f64, FrontSample)]) -> Vec<ObjCurve> {
    let pos = |f: &FrontSample| f.points.iter().map(|p| p.position).collect::<Vec<_>>();
    let mut curves = vec![
        ObjCurve {
            name: "lift".into(),
            points: pos(lift),
            closed: true,
        },
        ObjCurve {
            name: "dual".into(),
            points: pos(dual),
            closed: true,
        },
    ];
    for (t, f) in fronts {
        curves.push(ObjCurve {
            name: format!("front_t{t:+.6}"),
            points: pos(f),
            closed: true,
        });
    }
    curves
}

/// Top view (x, y) of curves on S².
fn top_view(curves: &[ObjCurve]) -> String {
    let colors = ["#000000", "#1f77b4", "#7f7f7f"];
    let lines: Vec<Polyline> = curves
        .iter()
        .enumerate()
        .map(|(i, c)| Polyline {
            label: c.name.clone(),
            color: colors[i.min(2)],
            points: c.points.iter().map(|p| [p[0], p[1]]).collect(),
            closed: c.closed,
        })
        .collect();
    svg(&lines)
}

pub fn front(cfg: &RunConfig) -> Result<u8> {
    let Some((g, f)) = curve_lift(cfg, "front")? else {
        return Ok(EXIT_HYPOTHESIS);
    };
    println!("integrand: {}", g.describe());
    let d = spherical_dual_map(&f)?;
    let fronts = wave_fronts(&f, &scene_ts(cfg))?;
    for (t, w) in &fronts {
        let s = spread(w);
        let note = if s < 1e-9 { " (collapsed to a point)" } else { "" };
        println!("t = {t:+.6}: spread {s:.3e}{note}");
    }
    cfg.ensure_out()?;
    let curves = front_curves(&f, &d, &fronts);
    if cfg.wants(Format::Obj) {
        write_file(&cfg.out.join("fronts.obj"), &obj_polylines(&curves))?;
    }
    if cfg.wants(Format::Svg) {
        write_file(&cfg.out.join("fronts.svg"), &top_view(&curves))?;
    }
    if cfg.wants(Format::Csv) {
        let mut s = String::from("t,theta,x,y,z\n");
        for (t, w) in &fronts {
            for (th, p) in w.params.iter().zip(&w.points) {
                let c = p.position;
                let _ = writeln!(s, "{t:.12},{:.12},{:.12},{:.12},{:.12}", th.angle(), c[0], c[1], c[2]);
            }
        }
        write_file(&cfg.out.join("fronts.csv"), &s)?;
    }
    println!("wrote {}", cfg.out.display());
    Ok(EXIT_OK)
}

fn locus_summary(name: &str, a: &SingularLocus, b: &SingularLocus, tol: f64) -> bool {
    let h = hausdorff(&a.positions(), &b.positions());
    let n = SpherePoint::north(3);
    let ok = h <= tol;
    println!(
        "{name}: {} entries (dual front {}), Hausdorff {h:.3e} vs tolerance {tol:.3e} [{}], distance to N {:.3e}",
        a.entries.len(),
        b.entries.len(),
        if ok { "ok" } else { "mismatch" },
        a.distance_to(&n)
    );
    ok
}

pub fn caustic(cfg: &RunConfig) -> Result<u8> {
    let Some((g, f)) = curve_lift(cfg, "caustic sampling")? else {
        return Ok(EXIT_HYPOTHESIS);
    };
    println!("integrand: {}", g.describe());
    let d = spherical_dual_map(&f)?;
    let ts = default_t_grid();
    let tol = 2.0 * (ts[1] - ts[0] + std::f64::consts::TAU / f.params.len() as f64);
    let (c, cd) = (caustic_sample(&f, &ts)?, caustic_sample(&d, &ts)?);
    let (s, sd) = (symmetry_sample(&f, &ts)?, symmetry_sample(&d, &ts)?);
    let ok_c = locus_summary("caustic", &c, &cd, tol);
    let ok_s = locus_summary("symmetry set", &s, &sd, tol);
    println!(
        "N in caustic (critical points): {}; N in symmetry set (critical values): {}",
        yes_no(origin_in_caustic(&g)),
        yes_no(origin_in_symmetry_set(&g))
    );
    cfg.ensure_out()?;
    if cfg.wants(Format::Csv) {
        write_file(&cfg.out.join("caustic.csv"), &c.csv())?;
        write_file(&cfg.out.join("symmetry.csv"), &s.csv())?;
    }
    if cfg.wants(Format::Obj) {
        let coords = |l: &SingularLocus| l.positions().iter().map(|p| p.coords()).collect::<Vec<_>>();
        write_file(&cfg.out.join("caustic.obj"), &obj_points("caustic", &coords(&c)))?;
        write_file(&cfg.out.join("symmetry.obj"), &obj_points("symmetry", &coords(&s)))?;
        let fronts = wave_fronts(&f, &scene_ts(cfg))?;
        write_file(
            &cfg.out.join("scene.obj"),
            &obj_polylines(&front_curves(&f, &d, &fronts)),
        )?;
    }
    println!("wrote {}", cfg.out.display());
    Ok(if ok_c && ok_s { EXIT_OK } else { EXIT_FAIL })
}

pub fn polar(cfg: &RunConfig) -> Result<u8> {
    let path = cfg
        .points
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("--points is required".into()))?;
    let x = match FinitePointSet::load(path, 3) {
        Ok(x) => x,
        Err(Error::NotHemispherical) => {
            println!("not hemispherical: no open hemisphere contains every point");
            return Ok(EXIT_FAIL);
        }
        Err(e) => return Err(e),
    };
    println!("points: {}", x.len());
    let report = maehara_check(&x)?;
    println!(
        "maehara: {} ({} mismatches, {} outside the boundary band, max discrepancy {:.3e} rad)",
        if report.agree() { "agree" } else { "disagree" },
        report.comparison.mismatches,
        report.comparison.outside_band,
        report.max_discrepancy
    );
    match double_polar_check(&x)? {
        DoublePolarStatus::Degenerate => println!("double polar: degenerate (hull has no interior)"),
        status @ DoublePolarStatus::Checked { comparison, contained } => println!(
            "double polar: {} ({} outside the boundary band, contained {})",
            if status.agree() == Some(true) {
                "agree"
            } else {
                "disagree"
            },
            comparison.outside_band,
            yes_no(contained)
        ),
    }
    cfg.ensure_out()?;
    if cfg.wants(Format::Csv) {
        x.polar()?.write_csv(&cfg.out.join("polar.csv"))?;
        spherical_convex_hull(&x)?.region.write_csv(&cfg.out.join("hull.csv"))?;
    }
    println!("wrote {}", cfg.out.display());
    Ok(if report.agree() { EXIT_OK } else { EXIT_FAIL })
}
