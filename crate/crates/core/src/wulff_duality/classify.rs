use std::f64::consts::TAU;
use std::fmt;

use crate::integrand::{validation_grid, Integrand, PeriodicSpline};
use crate::sphere_geometry::{Chart, ChartMatrix, SpherePoint, Vector};

/// min(γ + γ″) (n = 1) or min eig(Hess γ + γ I) (n = 2) must exceed this.
pub const CONVEX_TOL: f64 = -1e-9;
/// Curvature floor for strict convexity.
pub const STRICT_TOL: f64 = 1e-7;

#[derive(Clone, Debug)]
pub struct ConvexityReport {
    pub is_convex_integrand: bool,
    pub is_strictly_convex: bool,
    /// Where the convexity margin is smallest.
    pub witness: SpherePoint,
    /// min(γ + γ″) or the smallest eigenvalue of Hess γ + γ I.
    pub margin: f64,
    /// Smallest principal curvature of the inverted graph of γ.
    pub curvature: f64,
    pub curvature_witness: SpherePoint,
}

impl fmt::Display for ConvexityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let at = crate::error::Witness(self.witness.coords().as_slice().to_vec());
        let cat = crate::error::Witness(self.curvature_witness.coords().as_slice().to_vec());
        writeln!(
            f,
            "convex: {} (margin {:.3e} at {at}; tolerance {CONVEX_TOL:e})",
            yn(self.is_convex_integrand),
            self.margin
        )?;
        write!(
            f,
            "strictly convex: {} (min curvature {:.3e} at {cat}; floor {STRICT_TOL:e})",
            yn(self.is_strictly_convex),
            self.curvature
        )
    }
}

/// Convexity margin of the 1-homogeneous extension and where it is attained.
pub(crate) fn fast_convexity(g: &Integrand) -> (f64, SpherePoint) {
    if let Some(spline) = g.as_spline() {
        return discrete_convexity(spline);
    }
    let mut best = (f64::INFINITY, SpherePoint::north(g.ambient_dim()));
    for p in validation_grid(g.dim()) {
        let m = support_margin(g, &p);
        if m < best.0 || m.is_nan() {
            best = (m, p);
        }
    }
    best
}

/// Discrete version of min(γ + γ″) on spline nodes. Each node must lie below
/// the chord of its neighbours in the 1-homogeneous extension; the defect is
/// scaled so that it tends to γ + γ″ under refinement. Interpolation ringing
/// near a corner of sampled data would otherwise dominate the margin.
fn discrete_convexity(s: &PeriodicSpline) -> (f64, SpherePoint) {
    let (x, y) = s.nodes();
    let n = x.len();
    let mut best = (f64::INFINITY, SpherePoint::from_angle(x[0]));
    for k in 0..n {
        let (p, q) = ((k + n - 1) % n, (k + 1) % n);
        let h1 = (x[k] - x[p]).rem_euclid(TAU);
        let h2 = (x[q] - x[k]).rem_euclid(TAU);
        let defect = y[p] * h2.sin() + y[q] * h1.sin() - y[k] * (h1 + h2).sin();
        let m = 2.0 * defect / (h1 * h2 * (h1 + h2));
        if m < best.0 || m.is_nan() {
            best = (m, SpherePoint::from_angle(x[k]));
        }
    }
    best
}

fn support_margin(g: &Integrand, p: &SpherePoint) -> f64 {
    let chart = Chart::oriented(p);
    let l = g.local(p);
    let mut h = chart.restrict(&l.hess);
    for i in 0..chart.n() {
        h.m[i][i] += l.value;
    }
    h.eigenvalues()[0]
}

/// Principal curvatures of the radial graph X(θ) = ρ(θ)θ of ρ, smallest
/// first, with respect to the normal pointing away from the origin.
pub fn radial_graph_curvatures(rho: &Integrand, theta: &SpherePoint) -> Vec<f64> {
    let chart = Chart::oriented(theta);
    let l = rho.local(theta);
    let n = chart.n();
    let e = chart.frame();
    let t = theta.coords();
    let g: Vec<f64> = e.iter().map(|ei| l.grad.dot(ei)).collect();
    let hs = chart.restrict(&l.hess);
    let xi: Vec<Vector> = (0..n).map(|i| t * g[i] + e[i] * l.value).collect();
    let xij = |i: usize, j: usize| -> Vector {
        let mut v = t * hs.m[i][j] + e[i] * g[j] + e[j] * g[i];
        if i == j {
            v -= t * l.value;
        }
        v
    };
    let normal = match n {
        1 => Vector::new(&[xi[0][1], -xi[0][0]]),
        _ => xi[0].cross(&xi[1]),
    };
    let mut nu = normal.normalized().unwrap_or(t);
    if nu.dot(&t) < 0.0 {
        nu = -nu;
    }
    let mut first = ChartMatrix::zeros(n);
    let mut second = ChartMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            first.m[i][j] = xi[i].dot(&xi[j]);
            second.m[i][j] = -xij(i, j).dot(&nu);
        }
    }
    match n {
        1 => vec![second.m[0][0] / first.m[0][0]],
        _ => {
            // Eigenvalues of I⁻¹ II: roots of det(II − κ I) = 0.
            let (e_, f_, g_) = (first.m[0][0], first.m[0][1], first.m[1][1]);
            let (l_, m_, n_) = (second.m[0][0], second.m[0][1], second.m[1][1]);
            let a = e_ * g_ - f_ * f_;
            let b = -(e_ * n_ + g_ * l_ - 2.0 * f_ * m_);
            let c = l_ * n_ - m_ * m_;
            let disc = (b * b - 4.0 * a * c).max(0.0).sqrt();
            let mut k = vec![(-b - disc) / (2.0 * a), (-b + disc) / (2.0 * a)];
            k.sort_by(f64::total_cmp);
            k
        }
    }
}

/// Convex-integrand and strict-convexity classification on the validation
/// grid.
pub fn classify(g: &Integrand) -> ConvexityReport {
    let (margin, witness) = fast_convexity(g);
    let is_convex = margin > CONVEX_TOL;
    let hat = g.antipodal_reciprocal();
    let mut curvature = (f64::INFINITY, witness);
    for p in validation_grid(g.dim()) {
        let k = radial_graph_curvatures(&hat, &p)[0];
        if k < curvature.0 || k.is_nan() {
            curvature = (k, p);
        }
    }
    ConvexityReport {
        is_convex_integrand: is_convex,
        is_strictly_convex: is_convex && curvature.0 > STRICT_TOL,
        witness,
        margin,
        curvature: curvature.0,
        curvature_witness: curvature.1,
    }
}
