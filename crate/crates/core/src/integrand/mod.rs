//! Positive functions on Sⁿ (n = 1, 2) with intrinsic first and second
//! derivatives.

mod closed_form;
pub mod fixtures;
mod fourier;
mod harmonic;
mod spec_file;
mod spline;

pub use closed_form::ClosedForm;
pub use fourier::FourierSeries;
pub use harmonic::HarmonicSeries;
pub(crate) use spec_file::read_rows;
pub use spec_file::{load, parse_spec, render_spec, IntegrandSpec, SpecBody, SAMPLED_HARMONIC_DEGREE};

pub use spline::PeriodicSpline;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sphere_geometry::{circle_grid, Chart, ChartMatrix, Icosphere, SpherePoint, SymMatrix, Vector};

/// Number of uniform angles in the n = 1 validation grid.
pub const CIRCLE_GRID: usize = 4096;
/// Icosphere subdivision level of the n = 2 validation grid.
pub const ICO_LEVEL: usize = 5;

/// Value, tangent gradient and ambient Hessian at one point.
///
/// `hess` is the intrinsic Hessian written as an ambient form P H P, so
/// restricting it to any tangent frame gives the chart Hessian.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Local {
    pub value: f64,
    pub grad: Vector,
    pub hess: SymMatrix,
}

impl Local {
    /// Builds the ambient jet on S¹ from angular derivatives (f, f′, f″).
    pub fn from_angular(phi: f64, d: [f64; 3]) -> Local {
        let t = Vector::new(&[-phi.sin(), phi.cos()]);
        Local {
            value: d[0],
            grad: t * d[1],
            hess: SymMatrix::outer(&t, d[2]),
        }
    }
}

/// A representation that can be plugged into [`Integrand`].
pub trait Model: Send + Sync + fmt::Debug {
    fn n(&self) -> usize;
    fn value(&self, theta: &SpherePoint) -> f64;
    fn local(&self, theta: &SpherePoint) -> Local;
    fn describe(&self) -> String;
}

#[derive(Debug)]
enum Repr {
    Fourier(FourierSeries),
    Harmonic(HarmonicSeries),
    Spline(PeriodicSpline),
    Closed(ClosedForm),
    Reciprocal(Integrand),
    Custom(Arc<dyn Model>),
}

#[derive(Debug)]
struct Inner {
    n: usize,
    repr: Repr,
    min_value: f64,
}

/// Positive function γ on Sⁿ. Cheap to clone; immutable after build.
#[derive(Clone, Debug)]
pub struct Integrand(Arc<Inner>);

impl Integrand {
    fn build(n: usize, repr: Repr) -> Result<Integrand> {
        let g = Integrand(Arc::new(Inner {
            n,
            repr,
            min_value: f64::NAN,
        }));
        let min = validation_grid(n)
            .iter()
            .map(|p| g.eval(p))
            .fold(f64::INFINITY, |m, v| if v < m || v.is_nan() { v } else { m });
        if !(min > 0.0) {
            return Err(Error::NotPositive { min });
        }
        let mut inner = Arc::try_unwrap(g.0).expect("freshly built integrand is uniquely owned");
        inner.min_value = min;
        Ok(Integrand(Arc::new(inner)))
    }

    pub fn fourier(series: FourierSeries) -> Result<Integrand> {
        Self::build(1, Repr::Fourier(series))
    }

    pub fn harmonic(series: HarmonicSeries) -> Result<Integrand> {
        Self::build(2, Repr::Harmonic(series))
    }

    pub fn spline(spline: PeriodicSpline) -> Result<Integrand> {
        Self::build(1, Repr::Spline(spline))
    }

    pub fn closed_form(form: ClosedForm) -> Result<Integrand> {
        let n = form.n();
        Self::build(n, Repr::Closed(form))
    }

    /// Wraps a custom model. Positivity is taken from `min_value` instead of
    /// a grid sweep, since custom models may be expensive to evaluate.
    pub fn custom(model: Arc<dyn Model>, min_value: f64) -> Result<Integrand> {
        if !(min_value > 0.0) {
            return Err(Error::NotPositive { min: min_value });
        }
        let n = model.n();
        Ok(Integrand(Arc::new(Inner {
            n,
            repr: Repr::Custom(model),
            min_value,
        })))
    }

    /// γ ≡ c on Sⁿ.
    pub fn constant(n: usize, c: f64) -> Result<Integrand> {
        match n {
            1 => Self::closed_form(ClosedForm::Constant(c)),
            2 => Self::closed_form(ClosedForm::Constant2(c)),
            _ => Err(Error::UnsupportedDimension(n)),
        }
    }

    /// Sphere dimension n.
    pub fn dim(&self) -> usize {
        self.0.n
    }

    /// Ambient dimension n + 1.
    pub fn ambient_dim(&self) -> usize {
        self.0.n + 1
    }

    /// Minimum over the validation grid, cached at build time.
    pub fn min_value(&self) -> f64 {
        self.0.min_value
    }

    pub fn describe(&self) -> String {
        match &self.0.repr {
            Repr::Fourier(f) => format!("fourier series of degree {}", f.degree()),
            Repr::Harmonic(h) => format!("spherical-harmonic series of degree {}", h.lmax()),
            Repr::Spline(s) => format!("periodic cubic spline on {} nodes", s.len()),
            Repr::Closed(c) => c.describe(),
            Repr::Reciprocal(g) => format!("1/g(-θ) of [{}]", g.describe()),
            Repr::Custom(m) => m.describe(),
        }
    }

    pub fn as_fourier(&self) -> Option<&FourierSeries> {
        match &self.0.repr {
            Repr::Fourier(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_spline(&self) -> Option<&PeriodicSpline> {
        match &self.0.repr {
            Repr::Spline(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_harmonic(&self) -> Option<&HarmonicSeries> {
        match &self.0.repr {
            Repr::Harmonic(h) => Some(h),
            _ => None,
        }
    }

    fn check(&self, theta: &SpherePoint) {
        debug_assert_eq!(theta.ambient_dim(), self.ambient_dim(), "point on the wrong sphere");
    }

    pub fn eval(&self, theta: &SpherePoint) -> f64 {
        self.check(theta);
        match &self.0.repr {
            Repr::Fourier(f) => f.value(theta.angle()),
            Repr::Harmonic(h) => h.value(&theta.coords()),
            Repr::Spline(s) => s.value(theta.angle()),
            Repr::Closed(c) => c.value(theta),
            Repr::Reciprocal(g) => 1.0 / g.eval(&theta.antipode()),
            Repr::Custom(m) => m.value(theta),
        }
    }

    /// Value, gradient and ambient Hessian in one pass.
    pub fn local(&self, theta: &SpherePoint) -> Local {
        self.check(theta);
        match &self.0.repr {
            Repr::Fourier(f) => {
                let phi = theta.angle();
                Local::from_angular(phi, f.derivatives(phi))
            }
            Repr::Harmonic(h) => h.local(&theta.coords()),
            Repr::Spline(s) => {
                let phi = theta.angle();
                Local::from_angular(phi, s.derivatives(phi))
            }
            Repr::Closed(c) => c.local(theta),
            Repr::Reciprocal(g) => {
                let l = g.local(&theta.antipode());
                let f = l.value;
                let hess = SymMatrix::outer(&l.grad, 2.0 / (f * f * f)).add(&l.hess.scale(-1.0 / (f * f)));
                Local {
                    value: 1.0 / f,
                    grad: l.grad * (1.0 / (f * f)),
                    hess,
                }
            }
            Repr::Custom(m) => m.local(theta),
        }
    }

    /// Tangent gradient ∇γ(θ) as an ambient vector orthogonal to θ.
    pub fn grad(&self, theta: &SpherePoint) -> Vector {
        self.local(theta).grad
    }

    /// Intrinsic Hessian in the normal coordinates of `chart`.
    pub fn hess(&self, theta: &SpherePoint, chart: &Chart) -> ChartMatrix {
        chart.restrict(&self.local(theta).hess)
    }

    /// (γ, γ′, γ″) at an angle, for n = 1.
    pub fn angular(&self, phi: f64) -> [f64; 3] {
        debug_assert_eq!(self.dim(), 1);
        match &self.0.repr {
            Repr::Fourier(f) => f.derivatives(phi),
            Repr::Spline(s) => s.derivatives(phi),
            _ => {
                let l = self.local(&SpherePoint::from_angle(phi));
                let t = Vector::new(&[-phi.sin(), phi.cos()]);
                [l.value, l.grad.dot(&t), l.hess.bilinear(&t, &t)]
            }
        }
    }

    /// γ̂(θ) = 1/γ(−θ). Applying it twice returns the original integrand.
    pub fn antipodal_reciprocal(&self) -> Integrand {
        if let Repr::Reciprocal(g) = &self.0.repr {
            return g.clone();
        }
        let max = validation_grid(self.dim())
            .iter()
            .map(|p| self.eval(p))
            .fold(0.0f64, f64::max);
        Integrand(Arc::new(Inner {
            n: self.0.n,
            repr: Repr::Reciprocal(self.clone()),
            min_value: 1.0 / max,
        }))
    }

    /// Samples on the validation grid.
    pub fn sample(&self) -> (Vec<SpherePoint>, Vec<f64>) {
        let grid = validation_grid(self.dim());
        let values = grid.iter().map(|p| self.eval(p)).collect();
        (grid, values)
    }
}

/// Dense grid on which positivity and derivative consistency are checked.
pub fn validation_grid(n: usize) -> Vec<SpherePoint> {
    match n {
        1 => circle_grid(CIRCLE_GRID),
        _ => Icosphere::cached(ICO_LEVEL).vertices.clone(),
    }
}

/// Geodesic finite-difference gradient and Hessian of γ in `chart`.
///
/// Serves as the independent oracle for the analytic derivative paths.
pub fn finite_difference(g: &Integrand, chart: &Chart, step: f64) -> (Vec<f64>, ChartMatrix) {
    finite_difference_fn(&|p| g.eval(p), chart, step)
}

/// Central differences of f ∘ exp in the normal coordinates of `chart`.
pub fn finite_difference_fn(f: &dyn Fn(&SpherePoint) -> f64, chart: &Chart, step: f64) -> (Vec<f64>, ChartMatrix) {
    let n = chart.n();
    let at = |a: &[f64]| f(&chart.exp(a));
    let f0 = at(&[0.0, 0.0][..n]);
    let mut grad = vec![0.0; n];
    let mut hess = ChartMatrix::zeros(n);
    for i in 0..n {
        let mut a = [0.0; 2];
        a[i] = step;
        let fp = at(&a[..n]);
        a[i] = -step;
        let fm = at(&a[..n]);
        grad[i] = (fp - fm) / (2.0 * step);
        hess.m[i][i] = (fp - 2.0 * f0 + fm) / (step * step);
    }
    if n == 2 {
        let pp = at(&[step, step]);
        let pm = at(&[step, -step]);
        let mp = at(&[-step, step]);
        let mm = at(&[-step, -step]);
        let mixed = (pp - pm - mp + mm) / (4.0 * step * step);
        hess.m[0][1] = mixed;
        hess.m[1][0] = mixed;
    }
    (grad, hess)
}
