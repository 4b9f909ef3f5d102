use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn wulff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wulff"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn out_dir(d: &TempDir) -> String {
    d.path().to_str().unwrap().to_string()
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn check_translated_disc() {
    let o = wulff(&["check", "--integrand", "builtin:translated_disc"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("convex: yes, strictly: yes, stable: yes"));
    assert!(stdout(&o).contains("tolerances:"));
}

#[test]
fn check_nonconvex_reports_witness() {
    let o = wulff(&["check", "--integrand", "builtin:nonconvex"]);
    assert_eq!(code(&o), 1);
    assert!(
        stdout(&o).contains("convex: no (witness angle ≈ 0.000"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn check_reads_spec_files() {
    let d = TempDir::new().unwrap();
    let good = d.path().join("disc.txt");
    std::fs::write(&good, "dim = 1\nkind = fourier\na0 = 1\ncos1 = 0.2\n").unwrap();
    assert_eq!(code(&wulff(&["check", "--integrand", good.to_str().unwrap()])), 0);
    let bad = d.path().join("bad.txt");
    std::fs::write(&bad, "dim = 1\nkind = fourier\na0 = one\n").unwrap();
    let o = wulff(&["check", "--integrand", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(code(&wulff(&["check", "--integrand", "/no/such/file.txt"])), 2);
}

#[test]
fn bounds_on_overrides() {
    assert_eq!(
        code(&wulff(&["check", "--integrand", "builtin:ball", "--tol", "0.5"])),
        2
    );
    let d = TempDir::new().unwrap();
    assert_eq!(
        code(&wulff(&[
            "dual",
            "--integrand",
            "builtin:ball",
            "--grid",
            "16",
            "--out",
            &out_dir(&d)
        ])),
        2
    );
    assert_eq!(code(&wulff(&["frobnicate"])), 2);
}

#[test]
fn dual_of_ball() {
    let d = TempDir::new().unwrap();
    let o = wulff(&["dual", "--integrand", "builtin:ball", "--out", &out_dir(&d)]);
    assert_eq!(code(&o), 0);
    let csv = read(d.path(), "delta.csv");
    assert!(csv.starts_with("theta,delta\n"));
    for line in csv.lines().skip(1) {
        let v: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }
    for svg in ["wulff.svg", "dual_wulff.svg"] {
        assert!(read(d.path(), svg).contains("<polygon"));
    }
}

#[test]
fn dual_of_ellipse_matches_closed_form() {
    let d = TempDir::new().unwrap();
    assert_eq!(
        code(&wulff(&[
            "dual",
            "--integrand",
            "builtin:ellipse",
            "--format",
            "csv",
            "--out",
            &out_dir(&d)
        ])),
        0
    );
    for line in read(d.path(), "delta.csv").lines().skip(1) {
        let mut it = line.split(',').map(|x| x.parse::<f64>().unwrap());
        let (phi, v) = (it.next().unwrap(), it.next().unwrap());
        let want = (phi.cos().powi(2) + 4.0 * phi.sin().powi(2)).sqrt() / 2.0;
        assert!((v - want).abs() < 1e-7);
    }
    assert!(!d.path().join("wulff.svg").exists());
}

#[test]
fn dual_of_flat_blend_uses_oracle() {
    let d = TempDir::new().unwrap();
    let o = wulff(&["dual", "--integrand", "builtin:flat_blend", "--out", &out_dir(&d)]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("fast path refused"));
    assert!(s.contains("dual not C¹: jump"));
}

#[test]
fn dual_refuses_nonconvex() {
    let d = TempDir::new().unwrap();
    let o = wulff(&["dual", "--integrand", "builtin:nonconvex", "--out", &out_dir(&d)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("not a convex integrand"));
}

#[test]
fn dual_of_surface_writes_meshes() {
    let d = TempDir::new().unwrap();
    let o = wulff(&[
        "dual",
        "--integrand",
        "builtin:ball2",
        "--grid",
        "2",
        "--out",
        &out_dir(&d),
    ]);
    assert_eq!(code(&o), 0);
    let obj = read(d.path(), "dual_wulff.obj");
    assert!(obj.lines().any(|l| l.starts_with("f ")));
}

#[test]
fn dual_output_is_deterministic() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    for d in [&a, &b] {
        assert_eq!(
            code(&wulff(&[
                "dual",
                "--integrand",
                "builtin:translated_disc",
                "--out",
                &out_dir(d)
            ])),
            0
        );
    }
    for f in ["delta.csv", "wulff.csv", "dual_wulff.csv", "wulff.svg"] {
        assert_eq!(read(a.path(), f), read(b.path(), f));
    }
}

#[test]
fn verify_suites() {
    let o = wulff(&["verify", "--integrand", "builtin:translated_disc"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches("[PASS]").count(), 4);
    let o = wulff(&["verify", "--integrand", "builtin:ellipse"]);
    assert_eq!(code(&o), 3);
    let s = stdout(&o);
    assert!(s.contains("[PASS] stability-duality"));
    assert!(s.contains("critical-pairing: θ and −θ: hypothesis failed: not stable"));
    let o = wulff(&["verify", "--integrand", "builtin:flat_blend"]);
    assert!(stdout(&o).contains("dual not C¹: jump"));
}

#[test]
fn fronts_of_ball() {
    let d = TempDir::new().unwrap();
    let o = wulff(&[
        "front",
        "--integrand",
        "builtin:ball",
        "--t",
        "0.7853981633974483,-0.2",
        "--out",
        &out_dir(&d),
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("t = +0.785398: spread"));
    assert!(stdout(&o).contains("(collapsed to a point)"));
    let obj = read(d.path(), "fronts.obj");
    assert_eq!(obj.matches("o front_t").count(), 2);
    assert!(read(d.path(), "fronts.csv").starts_with("t,theta,x,y,z\n"));
}

#[test]
fn wave_parameters_may_start_negative() {
    let d = TempDir::new().unwrap();
    let o = wulff(&[
        "front",
        "--integrand",
        "builtin:ball",
        "--t",
        "-0.5,0,0.5",
        "--out",
        &out_dir(&d),
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("t = -0.500000: spread"));
}

#[test]
fn wave_parameter_pi_is_rejected() {
    let d = TempDir::new().unwrap();
    let o = wulff(&[
        "front",
        "--integrand",
        "builtin:ball",
        "--t",
        "3.141592653589793",
        "--out",
        &out_dir(&d),
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn caustic_of_translated_disc() {
    let d = TempDir::new().unwrap();
    let o = wulff(&[
        "caustic",
        "--integrand",
        "builtin:translated_disc",
        "--out",
        &out_dir(&d),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(read(d.path(), "caustic.csv").lines().count() > 1);
    assert_eq!(read(d.path(), "scene.obj").matches("o front_t").count(), 9);
    assert!(stdout(&o).contains("N in caustic (critical points): no"));
}

#[test]
fn caustic_of_surface_is_unsupported() {
    assert_eq!(code(&wulff(&["caustic", "--integrand", "builtin:harmonic_stable"])), 3);
}

#[test]
fn polar_commands() {
    let d = TempDir::new().unwrap();
    let one = d.path().join("one.csv");
    std::fs::write(&one, "x,y,z\n0,0,1\n").unwrap();
    let o = wulff(&["polar", "--points", one.to_str().unwrap(), "--out", &out_dir(&d)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("double polar: degenerate"));
    for line in read(d.path(), "polar.csv").lines().skip(1) {
        let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(f[3] == 1.0, f[2] >= 0.0);
    }

    let five = d.path().join("five.csv");
    std::fs::write(
        &five,
        "0.1,0.2,1\n0.5,0.1,0.9\n-0.3,0.4,0.8\n0.2,-0.5,0.9\n0.6,0.6,0.5\n",
    )
    .unwrap();
    let o = wulff(&["polar", "--points", five.to_str().unwrap(), "--out", &out_dir(&d)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("maehara: agree"));

    let pair = d.path().join("pair.csv");
    std::fs::write(&pair, "0,0,1\n0,0,-1\n").unwrap();
    let o = wulff(&["polar", "--points", pair.to_str().unwrap(), "--out", &out_dir(&d)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("not hemispherical"));
}
