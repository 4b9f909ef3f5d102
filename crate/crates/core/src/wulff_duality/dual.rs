use std::f64::consts::TAU;
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use super::classify::{classify, fast_convexity, CONVEX_TOL};
use super::radial::{andrews_solve, radial_search, SearchMode};
use super::{build_wulff, support_function, WulffBody};
use crate::error::{Error, Result, Witness};
use crate::integrand::{
    finite_difference_fn, validation_grid, FourierSeries, HarmonicSeries, Integrand, Local, Model, PeriodicSpline,
    ICO_LEVEL,
};
use crate::sphere_geometry::{Chart, Icosphere, SpherePoint, SymMatrix, Vector};

/// Degree of the harmonic fit representing n = 2 duals.
pub const DUAL_IO_DEGREE: usize = 16;

/// How the boundary of 𝒲_γ is located.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualPath {
    /// Minimize γ(v)/(u·v) for every direction; always valid.
    Oracle,
    /// Resample the Andrews map θ ↦ γ(θ)θ + ∇γ(θ); needs strict convexity.
    Andrews,
}

/// γ(θ)θ + ∇γ(θ), the point of ∂𝒲_γ with outer normal θ.
pub fn andrews_boundary(g: &Integrand, theta: &SpherePoint) -> Vector {
    let l = g.local(theta);
    theta.coords() * l.value + l.grad
}

/// Direction of the Andrews point of θ.
pub fn andrews_direction(g: &Integrand, theta: &SpherePoint) -> SpherePoint {
    SpherePoint::new(andrews_boundary(g, theta)).expect("Andrews point of a positive integrand is nonzero")
}

/// δ(θ) = 1/r(−θ), the dual convex integrand, via the minimization oracle.
pub fn dual_integrand(g: &Integrand) -> Result<Integrand> {
    dual_integrand_with(g, DualPath::Oracle)
}

pub fn dual_integrand_with(g: &Integrand, path: DualPath) -> Result<Integrand> {
    let report = classify(g);
    if !report.is_convex_integrand {
        return Err(Error::NotConvex {
            witness: Witness(report.witness.coords().as_slice().to_vec()),
            margin: report.margin,
        });
    }
    if path == DualPath::Andrews && !report.is_strictly_convex {
        return Err(Error::NotStrictlyConvex {
            witness: Witness(report.curvature_witness.coords().as_slice().to_vec()),
            curvature: report.curvature,
        });
    }
    let grid = validation_grid(g.dim());
    let values: Vec<f64> = match path {
        DualPath::Oracle => grid
            .iter()
            .map(|t| 1.0 / radial_search(g, &t.antipode(), SearchMode::Local).radius)
            .collect(),
        DualPath::Andrews => andrews_values(g, &grid)?,
    };
    represent(g.dim(), &grid, &values, report.is_strictly_convex)
}

/// Turns dual samples on the validation grid into an integrand.
fn represent(n: usize, grid: &[SpherePoint], values: &[f64], smooth: bool) -> Result<Integrand> {
    if n == 2 {
        return Integrand::harmonic(HarmonicSeries::fit_icosphere(ICO_LEVEL, values, DUAL_IO_DEGREE)?);
    }
    if smooth {
        Integrand::fourier(trig_interpolant(values)?)
    } else {
        let angles: Vec<f64> = grid.iter().map(|p| p.angle()).collect();
        Integrand::spline(PeriodicSpline::new(&angles, values)?)
    }
}

/// Truncated trigonometric interpolant of uniform samples on [0, 2π).
pub(crate) fn trig_interpolant(values: &[f64]) -> Result<FourierSeries> {
    let n = values.len();
    let mut buf: Vec<Complex<f64>> = values.iter().map(|&v| Complex::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 2.0 / n as f64;
    let a0 = buf[0].re / n as f64;
    let half = (n - 1) / 2;
    let mut cos: Vec<f64> = (1..=half).map(|k| buf[k].re * scale).collect();
    let mut sin: Vec<f64> = (1..=half).map(|k| -buf[k].im * scale).collect();
    let floor = 1e-15 * a0.abs();
    let keep = (0..half)
        .rev()
        .find(|&k| cos[k].abs().max(sin[k].abs()) > floor)
        .map_or(0, |k| k + 1);
    cos.truncate(keep);
    sin.truncate(keep);
    FourierSeries::new(a0, &cos, &sin)
}

/// Dual samples through the Andrews map.
fn andrews_values(g: &Integrand, grid: &[SpherePoint]) -> Result<Vec<f64>> {
    if g.dim() == 1 {
        // Andrews directions on a fine normal grid, unwrapped to be monotone.
        let m = grid.len();
        let normals: Vec<f64> = (0..m).map(|k| TAU * k as f64 / m as f64).collect();
        let mut psi: Vec<f64> = normals
            .iter()
            .map(|&phi| andrews_direction(g, &SpherePoint::from_angle(phi)).angle())
            .collect();
        for k in 1..m {
            while psi[k] < psi[k - 1] - std::f64::consts::PI {
                psi[k] += TAU;
            }
            while psi[k] > psi[k - 1] + std::f64::consts::PI {
                psi[k] -= TAU;
            }
        }
        grid.iter()
            .enumerate()
            .map(|(i, t)| {
                let u = t.antipode();
                let mut target = u.angle();
                while target < psi[0] {
                    target += TAU;
                }
                while target >= psi[0] + TAU {
                    target -= TAU;
                }
                let k = psi.partition_point(|&p| p <= target).clamp(1, m) - 1;
                let (p0, p1) = (psi[k], if k + 1 < m { psi[k + 1] } else { psi[0] + TAU });
                let (n0, n1) = (normals[k], normals[k] + TAU / m as f64);
                let frac = if p1 > p0 { (target - p0) / (p1 - p0) } else { 0.0 };
                let v0 = SpherePoint::from_angle(n0 + frac * (n1 - n0));
                let (_, x) = andrews_solve(g, &u, v0).ok_or(Error::DegenerateTangent(i))?;
                Ok(1.0 / x.norm())
            })
            .collect()
    } else {
        let table = Icosphere::cached(3);
        let dirs: Vec<Vector> = table
            .vertices
            .iter()
            .map(|v| andrews_direction(g, v).coords())
            .collect();
        grid.iter()
            .enumerate()
            .map(|(i, t)| {
                let u = t.antipode();
                let uc = u.coords();
                let nearest = dirs
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.dot(&uc).total_cmp(&b.1.dot(&uc)))
                    .map(|(j, _)| j)
                    .unwrap_or(0);
                let (_, x) = andrews_solve(g, &u, table.vertices[nearest]).ok_or(Error::DegenerateTangent(i))?;
                Ok(1.0 / x.norm())
            })
            .collect()
    }
}

/// Support function of 𝒲_γ evaluated on demand (n = 2 convexification).
#[derive(Debug)]
struct SupportModel {
    body: WulffBody,
}

impl Model for SupportModel {
    fn n(&self) -> usize {
        2
    }

    fn value(&self, theta: &SpherePoint) -> f64 {
        support_function(&self.body, theta)
    }

    fn local(&self, theta: &SpherePoint) -> Local {
        let chart = Chart::oriented(theta);
        let (grad, hess) = finite_difference_fn(&|p| self.value(p), &chart, 1e-4);
        let e = chart.frame();
        let mut h = SymMatrix::zeros(3);
        for i in 0..2 {
            for j in 0..2 {
                h = h.add(&SymMatrix::sym_outer(&e[i], &e[j], 0.5 * hess.m[i][j]));
            }
        }
        Local {
            value: self.value(theta),
            grad: e[0] * grad[0] + e[1] * grad[1],
            hess: h,
        }
    }

    fn describe(&self) -> String {
        format!(
            "support function of the Wulff shape of [{}]",
            self.body.generator().describe()
        )
    }
}

/// The convex integrand with the same Wulff shape: the support function of
/// 𝒲_γ. Inputs that already pass the convexity test are returned unchanged.
pub fn convexify(g: &Integrand) -> Result<Integrand> {
    if fast_convexity(g).0 > CONVEX_TOL {
        return Ok(g.clone());
    }
    let body = build_wulff(g);
    if g.dim() == 1 {
        let grid = body.directions().to_vec();
        let values: Vec<f64> = grid.iter().map(|u| support_function(&body, u).min(g.eval(u))).collect();
        let angles: Vec<f64> = grid.iter().map(|p| p.angle()).collect();
        Integrand::spline(PeriodicSpline::new(&angles, &values)?)
    } else {
        let floor = body.support_samples().iter().copied().fold(f64::INFINITY, f64::min);
        Integrand::custom(Arc::new(SupportModel { body }), floor)
    }
}
