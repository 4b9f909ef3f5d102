//! Points, charts and exact maps on spheres: inversion, central projection,
//! the spherical blow-up and friends.

mod icosphere;
mod vector;

pub use icosphere::Icosphere;
pub use vector::{SymMatrix, Vector, MAX_DIM};

use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Guard width around the singular loci of Ψ_N and α_N.
pub const POLE_GUARD: f64 = 1e-12;
/// Pairs closer than this to antipodal have no well-defined arc.
pub const ANTIPODAL_GUARD: f64 = 1e-9;

/// Unit vector of ℝ^d.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct SpherePoint(Vector);

impl SpherePoint {
    /// Normalizes `v`; fails on zero or non-finite input.
    pub fn new(v: Vector) -> Result<Self> {
        v.normalized().map(SpherePoint).ok_or(Error::DegenerateVector)
    }

    pub fn from_coords(c: &[f64]) -> Result<Self> {
        Self::new(Vector::new(c))
    }

    /// Point of S¹ at angle `phi`.
    pub fn from_angle(phi: f64) -> Self {
        SpherePoint(Vector::new(&[phi.cos(), phi.sin()]))
    }

    /// North pole (0, …, 0, 1) of S^{d−1}.
    pub fn north(ambient: usize) -> Self {
        SpherePoint(Vector::basis(ambient, ambient - 1))
    }

    pub fn basis(ambient: usize, i: usize) -> Self {
        SpherePoint(Vector::basis(ambient, i))
    }

    /// Wraps a vector already known to be unit length.
    pub(crate) fn from_unit(v: Vector) -> Self {
        debug_assert!((v.norm() - 1.0).abs() < 1e-9, "not unit: {}", v.norm());
        SpherePoint(v)
    }

    pub fn coords(&self) -> Vector {
        self.0
    }

    /// Ambient dimension (one more than the sphere dimension).
    pub fn ambient_dim(&self) -> usize {
        self.0.dim()
    }

    /// Angle in [0, 2π) of a point of S¹.
    pub fn angle(&self) -> f64 {
        debug_assert_eq!(self.ambient_dim(), 2);
        let a = self.0[1].atan2(self.0[0]);
        if a < 0.0 {
            (a + TAU) % TAU
        } else {
            a
        }
    }

    pub fn antipode(&self) -> Self {
        SpherePoint(-self.0)
    }

    pub fn dot(&self, o: &SpherePoint) -> f64 {
        self.0.dot(&o.0)
    }
}

/// Polar plot coordinates (θ, r) of a nonzero point of ℝ^{n+1}.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct PolarPoint {
    direction: SpherePoint,
    radius: f64,
}

impl PolarPoint {
    pub fn new(direction: SpherePoint, radius: f64) -> Result<Self> {
        if radius > 0.0 && radius.is_finite() {
            Ok(PolarPoint { direction, radius })
        } else {
            Err(Error::NonPositiveRadius(radius))
        }
    }

    pub fn from_cartesian(x: Vector) -> Result<Self> {
        let r = x.norm();
        Self::new(SpherePoint::new(x)?, r)
    }

    pub fn direction(&self) -> SpherePoint {
        self.direction
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn to_cartesian(&self) -> Vector {
        self.direction.coords() * self.radius
    }
}

/// inv(θ, r) = (−θ, 1/r).
pub fn inversion(p: &PolarPoint) -> PolarPoint {
    PolarPoint {
        direction: p.direction.antipode(),
        radius: 1.0 / p.radius,
    }
}

/// α_N: open northern hemisphere of S^{n+1} → ℝ^{n+1} × {1}.
pub fn central_project(p: &SpherePoint) -> Result<Vector> {
    let c = p.coords();
    let h = c.last();
    if h <= POLE_GUARD {
        return Err(Error::NotNorthern(h));
    }
    Ok(c * (1.0 / h))
}

/// α_N⁻¹ ∘ Id: x ∈ ℝ^{n+1} ↦ (x, 1)/‖(x, 1)‖.
pub fn central_lift(x: &Vector) -> SpherePoint {
    let v = x.extend(1.0);
    SpherePoint::from_unit(v * (1.0 / v.norm()))
}

/// Ψ_N(P) = (N − (N·P)P)/√(1 − (N·P)²).
pub fn spherical_blowup(p: &SpherePoint) -> Result<SpherePoint> {
    let d = p.ambient_dim();
    let np = p.coords().last();
    if np.abs() >= 1.0 - POLE_GUARD {
        return Err(Error::NearPole(np));
    }
    let n = Vector::basis(d, d - 1);
    let q = n - p.coords() * np;
    // Renormalize explicitly: the closed-form scale loses digits near ±N.
    SpherePoint::new(q)
}

/// Id⁻¹ ∘ α_N ∘ Ψ_N ∘ α_N⁻¹ ∘ Id, which coincides with `inversion`.
pub fn blowup_conjugate(x: &PolarPoint) -> Result<PolarPoint> {
    let lifted = central_lift(&x.to_cartesian());
    let q = spherical_blowup(&lifted)?;
    let y = central_project(&q)?;
    PolarPoint::from_cartesian(y.truncate())
}

pub fn geodesic_distance(p: &SpherePoint, q: &SpherePoint) -> f64 {
    // atan2 form keeps full precision for nearly equal or nearly antipodal
    // points, where acos of the dot product loses half the digits.
    let (a, b) = (p.coords(), q.coords());
    let s = (a - b).norm();
    let c = (a + b).norm();
    2.0 * s.atan2(c)
}

/// Point ((1−t)P + tQ)/‖·‖ of the minor arc PQ.
pub fn arc_point(p: &SpherePoint, q: &SpherePoint, t: f64) -> Result<SpherePoint> {
    if p.dot(q) <= -1.0 + ANTIPODAL_GUARD {
        return Err(Error::AntipodalPair);
    }
    SpherePoint::new(p.coords() * (1.0 - t) + q.coords() * t)
}

/// Tangent chart at a point: n orthonormal vectors spanning T_center.
#[derive(Clone, Debug, PartialEq)]
pub struct Chart {
    center: SpherePoint,
    frame: [Vector; 3],
    n: usize,
}

impl Chart {
    /// Builds a chart from an explicit frame; vectors are orthonormalized
    /// against the center and each other.
    pub fn with_frame(center: SpherePoint, frame: &[Vector]) -> Result<Self> {
        let d = center.ambient_dim();
        if frame.len() + 1 != d {
            return Err(Error::DimensionMismatch {
                expected: d - 1,
                got: frame.len(),
            });
        }
        let mut out = [Vector::zeros(d); 3];
        let c = center.coords();
        for (k, f) in frame.iter().enumerate() {
            let mut v = f.reject(&c);
            for prev in &out[..k] {
                v = v.reject(prev);
            }
            out[k] = v.normalized().ok_or(Error::DegenerateVector)?;
        }
        Ok(Chart {
            center,
            frame: out,
            n: frame.len(),
        })
    }

    /// Counter-clockwise frame on S¹; the natural angle chart.
    pub fn circle(phi: f64) -> Self {
        Chart {
            center: SpherePoint::from_angle(phi),
            frame: [
                Vector::new(&[-phi.sin(), phi.cos()]),
                Vector::zeros(2),
                Vector::zeros(2),
            ],
            n: 1,
        }
    }

    /// Orientation-consistent chart: the angle chart on S¹, the Gram–Schmidt
    /// frame of [`tangent_frame`] elsewhere.
    pub fn oriented(center: &SpherePoint) -> Self {
        if center.ambient_dim() == 2 {
            Self::circle(center.angle())
        } else {
            tangent_frame(center)
        }
    }

    pub fn center(&self) -> SpherePoint {
        self.center
    }

    pub fn frame(&self) -> &[Vector] {
        &self.frame[..self.n]
    }

    /// Sphere dimension n.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Tangent vector Σ aᵢ eᵢ.
    pub fn tangent(&self, a: &[f64]) -> Vector {
        let mut v = Vector::zeros(self.center.ambient_dim());
        for (e, &x) in self.frame().iter().zip(a) {
            v += *e * x;
        }
        v
    }

    /// Chart coordinates (eᵢ · v) of an ambient vector.
    pub fn coords_of(&self, v: &Vector) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (o, e) in out.iter_mut().zip(self.frame()) {
            *o = e.dot(v);
        }
        out
    }

    /// Riemannian exponential map at the center.
    pub fn exp(&self, a: &[f64]) -> SpherePoint {
        exp_map(&self.center, &self.tangent(a))
    }

    /// Restriction Fᵀ H F of an ambient bilinear form to the chart.
    pub fn restrict(&self, h: &SymMatrix) -> ChartMatrix {
        let mut m = ChartMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.m[i][j] = h.bilinear(&self.frame[i], &self.frame[j]);
            }
        }
        m
    }
}

/// exp_p(v) for a tangent vector v at p.
pub fn exp_map(p: &SpherePoint, v: &Vector) -> SpherePoint {
    let t = v.norm();
    if t < 1e-300 {
        return *p;
    }
    let q = p.coords() * t.cos() + *v * (t.sin() / t);
    SpherePoint::new(q).unwrap_or(*p)
}

/// Deterministic Gram–Schmidt frame on the coordinate axes, skipping the axis
/// most parallel to the center.
pub fn tangent_frame(center: &SpherePoint) -> Chart {
    let c = center.coords();
    let d = c.dim();
    let skip = (0..d)
        .max_by(|&i, &j| c[i].abs().total_cmp(&c[j].abs()).then(j.cmp(&i)))
        .unwrap_or(0);
    let axes: Vec<Vector> = (0..d).filter(|&i| i != skip).map(|i| Vector::basis(d, i)).collect();
    Chart::with_frame(*center, &axes).expect("axes complementary to the dominant one are independent")
}

/// Small dense symmetric matrix in chart coordinates (n ≤ 3).
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct ChartMatrix {
    pub m: [[f64; 3]; 3],
    pub n: usize,
}

impl ChartMatrix {
    pub fn zeros(n: usize) -> Self {
        ChartMatrix { m: [[0.0; 3]; 3], n }
    }

    /// Eigenvalues in ascending order (closed form for n ≤ 2).
    pub fn eigenvalues(&self) -> Vec<f64> {
        match self.n {
            1 => vec![self.m[0][0]],
            2 => {
                let (a, b, d) = (self.m[0][0], 0.5 * (self.m[0][1] + self.m[1][0]), self.m[1][1]);
                let mean = 0.5 * (a + d);
                let r = (0.25 * (a - d) * (a - d) + b * b).sqrt();
                vec![mean - r, mean + r]
            }
            n => {
                let m = nalgebra::DMatrix::from_fn(n, n, |i, j| self.m[i][j]);
                let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
                ev.sort_by(f64::total_cmp);
                ev
            }
        }
    }

    /// Solves (M + λI) x = b for n ≤ 2; `None` if singular.
    pub fn solve_shifted(&self, b: &[f64], lambda: f64) -> Option<[f64; 3]> {
        match self.n {
            1 => {
                let a = self.m[0][0] + lambda;
                (a.abs() > 1e-300).then(|| [b[0] / a, 0.0, 0.0])
            }
            2 => {
                let (a, c) = (self.m[0][0] + lambda, self.m[1][1] + lambda);
                let (b01, b10) = (self.m[0][1], self.m[1][0]);
                let det = a * c - b01 * b10;
                if det.abs() < 1e-300 || !det.is_finite() {
                    return None;
                }
                Some([(c * b[0] - b01 * b[1]) / det, (a * b[1] - b10 * b[0]) / det, 0.0])
            }
            _ => None,
        }
    }
}

/// Uniform grid of `count` angles 2πk/count on S¹.
pub fn circle_grid(count: usize) -> Vec<SpherePoint> {
    (0..count)
        .map(|k| SpherePoint::from_angle(TAU * k as f64 / count as f64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross4_is_orthogonal() {
        let a = Vector::new(&[1.0, 2.0, 0.5, -1.0]);
        let b = Vector::new(&[0.0, 1.0, 3.0, 2.0]);
        let c = Vector::new(&[-1.0, 0.0, 1.0, 1.0]);
        let x = Vector::cross4(&a, &b, &c);
        for v in [a, b, c] {
            assert!(x.dot(&v).abs() < 1e-12);
        }
        let e = Vector::cross4(&Vector::basis(4, 0), &Vector::basis(4, 1), &Vector::basis(4, 2));
        assert_eq!(e, Vector::basis(4, 3));
    }

    #[test]
    fn circle_chart_is_counter_clockwise() {
        let c = Chart::circle(0.3);
        let p = c.exp(&[0.2]);
        assert!((p.angle() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn eigenvalues_2x2() {
        let mut m = ChartMatrix::zeros(2);
        m.m = [[2.0, 1.0, 0.0], [1.0, 2.0, 0.0], [0.0; 3]];
        let ev = m.eigenvalues();
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] - 3.0).abs() < 1e-14);
    }
}
