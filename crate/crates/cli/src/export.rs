use std::fmt::Write as _;
use std::path::Path;

use wulff_core::error::{Error, Result};
use wulff_core::sphere_geometry::Vector;

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub struct Polyline {
    pub label: String,
    pub color: &'static str,
    pub points: Vec<[f64; 2]>,
    pub closed: bool,
}

/// Planar scene with every polyline fitted into one view box.
pub fn svg(curves: &[Polyline]) -> String {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in curves.iter().flat_map(|c| &c.points) {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    if !lo[0].is_finite() {
        lo = [-1.0, -1.0];
        hi = [1.0, 1.0];
    }
    let pad = 0.05 * (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let (x0, y0) = (lo[0] - pad, lo[1] - pad);
    let (w, h) = (hi[0] - lo[0] + 2.0 * pad, hi[1] - lo[1] + 2.0 * pad);
    let stroke = 0.004 * w.max(h);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x0:.6} {:.6} {w:.6} {h:.6}\" width=\"600\" height=\"{:.0}\">",
        -(y0 + h),
        600.0 * h / w
    );
    // y is flipped so the picture has the usual orientation.
    let _ = writeln!(
        s,
        "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"{stroke:.6}\">"
    );
    for c in curves {
        let pts: Vec<String> = c.points.iter().map(|p| format!("{:.6},{:.6}", p[0], p[1])).collect();
        let tag = if c.closed { "polygon" } else { "polyline" };
        let _ = writeln!(
            s,
            "<{tag} stroke=\"{}\" points=\"{}\"><title>{}</title></{tag}>",
            c.color,
            pts.join(" "),
            c.label
        );
    }
    s.push_str("</g>\n</svg>\n");
    s
}

pub struct ObjCurve {
    pub name: String,
    pub points: Vec<Vector>,
    pub closed: bool,
}

/// One OBJ object per curve; OBJ indices are global and 1-based.
pub fn obj_polylines(curves: &[ObjCurve]) -> String {
    let mut s = String::new();
    let mut base = 1;
    for c in curves {
        let _ = writeln!(s, "o {}", c.name);
        for p in &c.points {
            let _ = writeln!(s, "v {:.9} {:.9} {:.9}", p[0], p[1], p[2]);
        }
        if c.points.len() > 1 {
            let mut idx: Vec<String> = (base..base + c.points.len()).map(|i| i.to_string()).collect();
            if c.closed {
                idx.push(base.to_string());
            }
            let _ = writeln!(s, "l {}", idx.join(" "));
        } else if c.points.len() == 1 {
            let _ = writeln!(s, "p {base}");
        }
        base += c.points.len();
    }
    s
}

pub fn obj_points(name: &str, points: &[Vector]) -> String {
    let mut s = format!("o {name}\n");
    for p in points {
        let _ = writeln!(s, "v {:.9} {:.9} {:.9}", p[0], p[1], p[2]);
    }
    if !points.is_empty() {
        let idx: Vec<String> = (1..=points.len()).map(|i| i.to_string()).collect();
        let _ = writeln!(s, "p {}", idx.join(" "));
    }
    s
}

pub fn obj_mesh(name: &str, vertices: &[Vector], faces: &[[usize; 3]]) -> String {
    let mut s = format!("o {name}\n");
    for p in vertices {
        let _ = writeln!(s, "v {:.9} {:.9} {:.9}", p[0], p[1], p[2]);
    }
    for f in faces {
        let _ = writeln!(s, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
    }
    s
}
