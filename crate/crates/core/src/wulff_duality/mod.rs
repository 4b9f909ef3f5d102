//! Wulff shapes, support and radial functions, the dual convex integrand,
//! convexity classification, Andrews parametrization and pedals.

mod classify;
mod dual;
mod probe;
mod radial;

pub use classify::{classify, radial_graph_curvatures, ConvexityReport, CONVEX_TOL, STRICT_TOL};
pub use dual::{
    andrews_boundary, andrews_direction, convexify, dual_integrand, dual_integrand_with, DualPath, DUAL_IO_DEGREE,
};
pub use probe::{dual_smoothness_probe, ProbeLevel, SmoothnessProbe, Trend};
pub use radial::{andrews_solve, radial_search, RadialHit, SearchMode, TIE_SEPARATION, TIE_VALUE_TOL};

use crate::error::{Error, Result};
use crate::integrand::{validation_grid, Integrand};
use crate::sphere_geometry::{Chart, PolarPoint, SpherePoint, Vector};

/// Half-space intersection 𝒲_γ = ⋂ {x · θ ≤ γ(θ)} with sampled boundary data.
#[derive(Clone, Debug)]
pub struct WulffBody {
    generator: Integrand,
    mode: SearchMode,
    directions: Vec<SpherePoint>,
    radii: Vec<f64>,
    normals: Vec<SpherePoint>,
    corners: Vec<bool>,
    support: Vec<f64>,
}

/// Samples ∂𝒲_γ on the validation grid. Convex integrands use the local
/// radial search; anything else falls back to the global one.
pub fn build_wulff(g: &Integrand) -> WulffBody {
    let mode = if classify::fast_convexity(g).0 > classify::CONVEX_TOL {
        SearchMode::Local
    } else {
        SearchMode::Global
    };
    build_wulff_with(g, validation_grid(g.dim()), mode)
}

pub fn build_wulff_with(g: &Integrand, directions: Vec<SpherePoint>, mode: SearchMode) -> WulffBody {
    let hits: Vec<RadialHit> = directions.iter().map(|u| radial_search(g, u, mode)).collect();
    let radii: Vec<f64> = hits.iter().map(|h| h.radius).collect();
    let points: Vec<Vector> = directions.iter().zip(&radii).map(|(u, r)| u.coords() * *r).collect();
    let support = directions.iter().map(|u| discrete_support(&points, u).0).collect();
    WulffBody {
        generator: g.clone(),
        mode,
        normals: hits.iter().map(|h| h.normal).collect(),
        corners: hits.iter().map(|h| h.multiple).collect(),
        directions,
        radii,
        support,
    }
}

fn discrete_support(points: &[Vector], u: &SpherePoint) -> (f64, usize) {
    let uc = u.coords();
    points
        .iter()
        .enumerate()
        .map(|(i, x)| (x.dot(&uc), i))
        .fold((f64::NEG_INFINITY, 0), |a, b| if b.0 > a.0 { b } else { a })
}

impl WulffBody {
    pub fn generator(&self) -> &Integrand {
        &self.generator
    }

    pub fn mode(&self) -> SearchMode {
        self.mode
    }

    pub fn directions(&self) -> &[SpherePoint] {
        &self.directions
    }

    /// Sampled radial function r(u) at [`Self::directions`].
    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    /// Outer normals at the sampled boundary points.
    pub fn normals(&self) -> &[SpherePoint] {
        &self.normals
    }

    /// Flags directions whose boundary point is a corner (tied minimizers).
    pub fn corners(&self) -> &[bool] {
        &self.corners
    }

    /// Discrete support values over the sampled boundary.
    pub fn support_samples(&self) -> &[f64] {
        &self.support
    }

    pub fn boundary_points(&self) -> Vec<Vector> {
        self.directions
            .iter()
            .zip(&self.radii)
            .map(|(u, r)| u.coords() * *r)
            .collect()
    }

    pub fn min_radius(&self) -> f64 {
        self.radii.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// r(u) of the body, computed by the minimization oracle.
pub fn radial_function(body: &WulffBody, u: &SpherePoint) -> f64 {
    radial_search(&body.generator, u, body.mode).radius
}

/// h(u) = max over the body of x · u: best sampled boundary point, then a
/// refinement along the boundary.
pub fn support_function(body: &WulffBody, u: &SpherePoint) -> f64 {
    let points = body.boundary_points();
    let (best, k) = discrete_support(&points, u);
    let g = &body.generator;
    let along = |w: &SpherePoint| radial_search(g, w, body.mode).radius * w.dot(u);
    match g.dim() {
        1 => {
            let n = body.directions.len();
            let phi0 = body.directions[k].angle();
            let h = std::f64::consts::TAU / n as f64;
            // Golden-section search on [φ_k − h, φ_k + h].
            let (mut a, mut b) = (phi0 - h, phi0 + h);
            let inv = (5f64.sqrt() - 1.0) / 2.0;
            let f = |phi: f64| along(&SpherePoint::from_angle(phi));
            let mut c = b - inv * (b - a);
            let mut d = a + inv * (b - a);
            let (mut fc, mut fd) = (f(c), f(d));
            while b - a > 1e-8 {
                if fc > fd {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - inv * (b - a);
                    fc = f(c);
                } else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + inv * (b - a);
                    fd = f(d);
                }
            }
            best.max(fc).max(fd)
        }
        _ => {
            // Compass search in the tangent plane at the best sample.
            let chart = Chart::oriented(&body.directions[k]);
            let mut centre = [0.0, 0.0];
            let mut value = best;
            let mut step = crate::sphere_geometry::Icosphere::cached(crate::integrand::ICO_LEVEL).spacing;
            while step > 1e-9 {
                let mut moved = false;
                for d in [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]] {
                    let trial = [centre[0] + step * d[0], centre[1] + step * d[1]];
                    let v = along(&chart.exp(&trial));
                    if v > value {
                        value = v;
                        centre = trial;
                        moved = true;
                        break;
                    }
                }
                if !moved {
                    step *= 0.5;
                }
            }
            value
        }
    }
}

/// Foot of the perpendicular from the origin to the tangent hyperplane of
/// ∂𝒲_γ at the Andrews point of θ.
pub fn pedal_point(g: &Integrand, theta: &SpherePoint) -> Result<PolarPoint> {
    let l = g.local(theta);
    let x = andrews_boundary(g, theta);
    let chart = Chart::oriented(theta);
    let p = crate::sphere_geometry::SymMatrix::identity(g.ambient_dim()).project(&theta.coords());
    let d = l.hess.add(&p.scale(l.value));
    let tangents: Vec<Vector> = chart.frame().iter().map(|e| d.apply(e)).collect();
    let normal = match g.dim() {
        1 => Vector::new(&[-tangents[0][1], tangents[0][0]]),
        _ => tangents[0].cross(&tangents[1]),
    };
    let nu = normal.normalized().ok_or(Error::DegenerateTangent(0))?;
    PolarPoint::from_cartesian(nu * x.dot(&nu))
}

/// Largest radial mismatch between two bodies sampled on the same grid.
pub fn radial_distance(a: &WulffBody, b: &WulffBody) -> f64 {
    a.radii
        .iter()
        .zip(&b.radii)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Sup-norm distance between two integrands on the validation grid.
pub fn sup_distance(a: &Integrand, b: &Integrand) -> f64 {
    validation_grid(a.dim())
        .iter()
        .map(|p| (a.eval(p) - b.eval(p)).abs())
        .fold(0.0, f64::max)
}
