//! Radial function of a Wulff shape by minimizing γ(v)/(u·v).
//!
//! In gnomonic coordinates x = u + F y (F a tangent frame at u) the quantity
//! γ(v)/(u·v) with v = x/|x| equals H(x) = |x| γ(x/|x|), the 1-homogeneous
//! extension of γ. H is convex exactly when γ is a convex integrand, which
//! makes damped Newton globally convergent in that case.

use std::f64::consts::PI;

use crate::integrand::Integrand;
use crate::sphere_geometry::{tangent_frame, Chart, ChartMatrix, Icosphere, SpherePoint, Vector};

/// Two minimizers closer in value than this count as ties.
pub const TIE_VALUE_TOL: f64 = 1e-6;
/// Tied minimizers further apart than this (radians) are distinct.
pub const TIE_SEPARATION: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Newton from the direction itself; exact for convex integrands.
    Local,
    /// Coarse scan of the open hemisphere followed by Newton from every
    /// coarse local minimum; needed when γ is not a convex integrand.
    Global,
}

#[derive(Clone, Copy, Debug)]
pub struct RadialHit {
    /// Boundary radius r(u).
    pub radius: f64,
    /// Minimizing direction v*, an outer normal of the body at r(u)u.
    pub normal: SpherePoint,
    /// Several well-separated minimizers tie: r(u)u is a corner.
    pub multiple: bool,
}

fn chart_at(u: &SpherePoint) -> Chart {
    Chart::oriented(u)
}

/// H(u + F y), its gradient and Hessian in y.
fn objective(g: &Integrand, chart: &Chart, y: &[f64]) -> (f64, [f64; 3], ChartMatrix) {
    let x = chart.center().coords() + chart.tangent(y);
    let rho = x.norm();
    let v = SpherePoint::from_unit(x * (1.0 / rho));
    let l = g.local(&v);
    let grad_amb = v.coords() * l.value + l.grad;
    let grad = chart.coords_of(&grad_amb);
    let mut hess = l.hess.project(&v.coords());
    let p = crate::sphere_geometry::SymMatrix::identity(x.dim()).project(&v.coords());
    hess = hess.add(&p.scale(l.value)).scale(1.0 / rho);
    (rho * l.value, grad, chart.restrict(&hess))
}

fn objective_value(g: &Integrand, chart: &Chart, y: &[f64]) -> f64 {
    let x = chart.center().coords() + chart.tangent(y);
    let rho = x.norm();
    rho * g.eval(&SpherePoint::from_unit(x * (1.0 / rho)))
}

/// Damped Newton with Levenberg shift and Armijo backtracking.
fn newton(g: &Integrand, chart: &Chart, y0: [f64; 3]) -> (f64, [f64; 3]) {
    let n = chart.n();
    let mut y = y0;
    let (mut f, mut gr, mut h) = objective(g, chart, &y[..n]);
    for _ in 0..100 {
        let gnorm = gr[..n].iter().map(|x| x * x).sum::<f64>().sqrt();
        if gnorm <= 1e-15 * f.max(1.0) {
            break;
        }
        let ev = h.eigenvalues();
        let scale = ev.iter().fold(0.0f64, |m, e| m.max(e.abs())).max(1e-12);
        let shift = if ev[0] > 1e-10 * scale {
            0.0
        } else {
            -ev[0] + 1e-8 * scale
        };
        let neg: Vec<f64> = gr[..n].iter().map(|x| -x).collect();
        let step = match h.solve_shifted(&neg, shift) {
            Some(s) => s,
            None => {
                let mut s = [0.0; 3];
                for i in 0..n {
                    s[i] = -gr[i];
                }
                s
            }
        };
        // Flat stretches of γ give a near-zero Hessian; cap the step length
        // so backtracking can still find descent.
        let mut step = step;
        let len = norm(&step[..n]);
        let cap = 1.0 + norm(&y[..n]);
        if len > cap {
            for s in step[..n].iter_mut() {
                *s *= cap / len;
            }
        }
        let slope: f64 = (0..n).map(|i| step[i] * gr[i]).sum();
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let mut trial = y;
            for i in 0..n {
                trial[i] += t * step[i];
            }
            let ft = objective_value(g, chart, &trial[..n]);
            if ft <= f + 1e-4 * t * slope.min(0.0) || (ft <= f && t < 1e-6) {
                accepted = Some((trial, ft));
                break;
            }
            t *= 0.5;
        }
        let Some((trial, ft)) = accepted else { break };
        let moved = (0..n).map(|i| (trial[i] - y[i]).powi(2)).sum::<f64>().sqrt();
        y = trial;
        let improved = f - ft;
        (f, gr, h) = objective(g, chart, &y[..n]);
        if moved < 1e-15 * (1.0 + norm(&y[..n])) || (improved <= 0.0 && moved < 1e-12) {
            break;
        }
    }
    (f, y)
}

fn norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn direction(chart: &Chart, y: &[f64]) -> SpherePoint {
    let x = chart.center().coords() + chart.tangent(y);
    SpherePoint::from_unit(x * (1.0 / x.norm()))
}

/// Coarse starting points: gnomonic coordinates of sampled local minima.
fn coarse_starts(g: &Integrand, u: &SpherePoint, chart: &Chart) -> Vec<[f64; 3]> {
    let mut starts: Vec<(f64, [f64; 3])> = Vec::new();
    if g.dim() == 1 {
        let m = 128;
        let vals: Vec<(f64, f64)> = (0..m)
            .map(|j| {
                let s = -PI / 2.0 + PI * (j as f64 + 0.5) / m as f64;
                let y = s.tan();
                (objective_value(g, chart, &[y]), y)
            })
            .collect();
        for j in 0..m {
            let left = if j > 0 { vals[j - 1].0 } else { f64::INFINITY };
            let right = if j + 1 < m { vals[j + 1].0 } else { f64::INFINITY };
            if vals[j].0 <= left && vals[j].0 <= right {
                starts.push((vals[j].0, [vals[j].1, 0.0, 0.0]));
            }
        }
    } else {
        let ico = Icosphere::cached(3);
        let uc = u.coords();
        let vals: Vec<Option<f64>> = ico
            .vertices
            .iter()
            .map(|v| {
                let d = v.dot(u);
                (d > 0.05).then(|| g.eval(v) / d)
            })
            .collect();
        for (i, v) in ico.vertices.iter().enumerate() {
            let Some(fi) = vals[i] else { continue };
            let is_min = ico.neighbors[i].iter().all(|&j| vals[j].map_or(true, |fj| fi <= fj));
            if is_min {
                let x = v.coords() * (1.0 / v.dot(u)) - uc;
                let c = chart.coords_of(&x);
                starts.push((fi, c));
            }
        }
    }
    starts.sort_by(|a, b| a.0.total_cmp(&b.0));
    starts.truncate(12);
    if starts.is_empty() {
        starts.push((0.0, [0.0; 3]));
    }
    starts.into_iter().map(|s| s.1).collect()
}

/// r(u) of 𝒲_γ together with the minimizing normal.
pub fn radial_search(g: &Integrand, u: &SpherePoint, mode: SearchMode) -> RadialHit {
    let chart = chart_at(u);
    match mode {
        SearchMode::Local => {
            let (f, y) = newton(g, &chart, [0.0; 3]);
            RadialHit {
                radius: f,
                normal: direction(&chart, &y[..chart.n()]),
                multiple: false,
            }
        }
        SearchMode::Global => {
            let mut found: Vec<(f64, SpherePoint)> = coarse_starts(g, u, &chart)
                .into_iter()
                .map(|y0| {
                    let (f, y) = newton(g, &chart, y0);
                    (f, direction(&chart, &y[..chart.n()]))
                })
                .collect();
            found.sort_by(|a, b| a.0.total_cmp(&b.0));
            let best = found[0];
            let multiple = found.iter().any(|(f, v)| {
                *f <= best.0 + TIE_VALUE_TOL && crate::sphere_geometry::geodesic_distance(v, &best.1) > TIE_SEPARATION
            });
            RadialHit {
                radius: best.0,
                normal: best.1,
                multiple,
            }
        }
    }
}

/// Newton-solves for the normal v whose Andrews point γ(v)v + ∇γ(v) lies in
/// direction u, starting from `v0`. Returns the Andrews point.
pub fn andrews_solve(g: &Integrand, u: &SpherePoint, v0: SpherePoint) -> Option<(SpherePoint, Vector)> {
    let fu = tangent_frame(u);
    let n = g.dim();
    let mut v = v0;
    for _ in 0..50 {
        let l = g.local(&v);
        let x = v.coords() * l.value + l.grad;
        let res = fu.coords_of(&x);
        let scale = x.norm();
        if norm(&res[..n]) <= 1e-15 * scale {
            return Some((v, x));
        }
        let fv = Chart::oriented(&v);
        let p = crate::sphere_geometry::SymMatrix::identity(v.ambient_dim()).project(&v.coords());
        let d2 = l.hess.add(&p.scale(l.value));
        let mut j = ChartMatrix::zeros(n);
        for a in 0..n {
            let col = d2.apply(&fv.frame()[a]);
            for b in 0..n {
                j.m[b][a] = fu.frame()[b].dot(&col);
            }
        }
        let neg: Vec<f64> = res[..n].iter().map(|r| -r).collect();
        let step = j.solve_shifted(&neg, 0.0)?;
        let len = norm(&step[..n]);
        let step_scale = if len > 0.5 { 0.5 / len } else { 1.0 };
        let scaled: Vec<f64> = step[..n].iter().map(|s| s * step_scale).collect();
        v = fv.exp(&scaled);
        if len < 1e-16 {
            break;
        }
    }
    let l = g.local(&v);
    let x = v.coords() * l.value + l.grad;
    let res = fu.coords_of(&x);
    (norm(&res[..n]) <= 1e-11 * x.norm() && x.dot(&u.coords()) > 0.0).then_some((v, x))
}
