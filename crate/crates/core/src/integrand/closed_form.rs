use crate::integrand::Local;
use crate::sphere_geometry::{SpherePoint, SymMatrix, Vector};

/// Integrands given by explicit formulas.
#[derive(Clone, Debug, PartialEq)]
pub enum ClosedForm {
    /// γ ≡ c on S¹.
    Constant(f64),
    /// γ ≡ c on S².
    Constant2(f64),
    /// Support function √(a²cos²θ + b²sin²θ) of the ellipse with semi-axes a, b.
    Ellipse { a: f64, b: f64 },
    /// γ(φ) = p cos φ + η(φ) with η = λ exp(−μ/(cos w − cos φ)) where
    /// |φ| > w and η = 0 on [−w, w].
    ///
    /// γ + γ″ = η + η″ vanishes identically on [−w, w], so the Wulff shape has
    /// a corner there: convex, C^∞, but not strictly convex.
    FlatBlend { p: f64, w: f64, lambda: f64, mu: f64 },
}

impl ClosedForm {
    pub fn n(&self) -> usize {
        match self {
            ClosedForm::Constant2(_) => 2,
            _ => 1,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ClosedForm::Constant(c) | ClosedForm::Constant2(c) => format!("constant {c}"),
            ClosedForm::Ellipse { a, b } => format!("ellipse support, semi-axes {a}, {b}"),
            ClosedForm::FlatBlend { p, w, lambda, mu } => {
                format!("flat blend p={p}, w={w}, lambda={lambda}, mu={mu}")
            }
        }
    }

    pub fn value(&self, theta: &SpherePoint) -> f64 {
        match self {
            ClosedForm::Constant(c) | ClosedForm::Constant2(c) => *c,
            _ => self.angular(theta.angle())[0],
        }
    }

    pub fn local(&self, theta: &SpherePoint) -> Local {
        match self {
            ClosedForm::Constant(c) | ClosedForm::Constant2(c) => {
                let d = theta.ambient_dim();
                Local {
                    value: *c,
                    grad: Vector::zeros(d),
                    hess: SymMatrix::zeros(d),
                }
            }
            _ => {
                let phi = theta.angle();
                Local::from_angular(phi, self.angular(phi))
            }
        }
    }

    /// (f, f′, f″) for the n = 1 forms.
    pub fn angular(&self, phi: f64) -> [f64; 3] {
        match *self {
            ClosedForm::Constant(c) | ClosedForm::Constant2(c) => [c, 0.0, 0.0],
            ClosedForm::Ellipse { a, b } => {
                let (s, c) = phi.sin_cos();
                let q = a * a * c * c + b * b * s * s;
                let dq = (b * b - a * a) * 2.0 * s * c;
                let d2q = (b * b - a * a) * 2.0 * (c * c - s * s);
                let f = q.sqrt();
                [f, dq / (2.0 * f), (2.0 * d2q * q - dq * dq) / (4.0 * q * f)]
            }
            ClosedForm::FlatBlend { p, w, lambda, mu } => {
                let (s, c) = phi.sin_cos();
                let q = w.cos() - c;
                let (mut e, mut de, mut d2e) = (0.0, 0.0, 0.0);
                if q > 0.0 {
                    let ex = lambda * (-mu / q).exp();
                    if ex > 0.0 {
                        // η = E(q(φ)) with q′ = sin φ, q″ = cos φ.
                        let e1 = ex * mu / (q * q);
                        let e2 = ex * (mu * mu / q.powi(4) - 2.0 * mu / q.powi(3));
                        e = ex;
                        de = e1 * s;
                        d2e = e2 * s * s + e1 * c;
                    }
                }
                [p * c + e, -p * s + de, -p * c + d2e]
            }
        }
    }
}
