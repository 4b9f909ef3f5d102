use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Periodic C² cubic spline interpolating samples on [0, 2π).
#[derive(Clone, Debug)]
pub struct PeriodicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Second derivatives at the nodes.
    m: Vec<f64>,
}

impl PeriodicSpline {
    /// Nodes may be given in any order and need not be uniform; angles are
    /// reduced mod 2π.
    pub fn new(angles: &[f64], values: &[f64]) -> Result<Self> {
        if angles.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: angles.len(),
                got: values.len(),
            });
        }
        if angles.len() < 4 {
            return Err(Error::InvalidArgument("spline needs at least 4 nodes".into()));
        }
        let mut pts: Vec<(f64, f64)> = angles
            .iter()
            .zip(values)
            .map(|(&a, &v)| (a.rem_euclid(TAU), v))
            .collect();
        if pts.iter().any(|(a, v)| !a.is_finite() || !v.is_finite()) {
            return Err(Error::InvalidArgument("non-finite spline sample".into()));
        }
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in pts.windows(2) {
            if w[1].0 - w[0].0 < 1e-12 {
                return Err(Error::InvalidArgument(format!("duplicate spline node at {}", w[0].0)));
            }
        }
        if pts[0].0 + TAU - pts[pts.len() - 1].0 < 1e-12 {
            return Err(Error::InvalidArgument("duplicate spline node at 0".into()));
        }
        let x: Vec<f64> = pts.iter().map(|p| p.0).collect();
        let y: Vec<f64> = pts.iter().map(|p| p.1).collect();
        let m = second_derivatives(&x, &y);
        Ok(PeriodicSpline { x, y, m })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Sorted node angles and the values there.
    pub fn nodes(&self) -> (&[f64], &[f64]) {
        (&self.x, &self.y)
    }

    fn h(&self, i: usize) -> f64 {
        let n = self.x.len();
        if i + 1 < n {
            self.x[i + 1] - self.x[i]
        } else {
            self.x[0] + TAU - self.x[n - 1]
        }
    }

    /// Interval index i and offset from x_i.
    fn locate(&self, phi: f64) -> (usize, f64) {
        let p = phi.rem_euclid(TAU);
        let n = self.x.len();
        let i = match self.x.partition_point(|&xi| xi <= p) {
            0 => n - 1,
            k => k - 1,
        };
        let mut d = p - self.x[i];
        if d < 0.0 {
            d += TAU;
        }
        (i, d)
    }

    pub fn value(&self, phi: f64) -> f64 {
        self.derivatives(phi)[0]
    }

    /// (f, f′, f″) at `phi`.
    pub fn derivatives(&self, phi: f64) -> [f64; 3] {
        let n = self.x.len();
        let (i, t) = self.locate(phi);
        let j = (i + 1) % n;
        let h = self.h(i);
        let (yi, yj, mi, mj) = (self.y[i], self.y[j], self.m[i], self.m[j]);
        let s = h - t;
        let f =
            (mi * s * s * s + mj * t * t * t) / (6.0 * h) + (yi / h - mi * h / 6.0) * s + (yj / h - mj * h / 6.0) * t;
        let df = (-mi * s * s + mj * t * t) / (2.0 * h) - (yi / h - mi * h / 6.0) + (yj / h - mj * h / 6.0);
        let d2f = (mi * s + mj * t) / h;
        [f, df, d2f]
    }
}

/// Solves the cyclic tridiagonal system for the nodal second derivatives
/// (Thomas algorithm plus a Sherman–Morrison correction for the corners).
fn second_derivatives(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = (0..n)
        .map(|i| {
            if i + 1 < n {
                x[i + 1] - x[i]
            } else {
                x[0] + TAU - x[n - 1]
            }
        })
        .collect();
    let mut a = vec![0.0; n];
    let mut b = vec![0.0; n];
    let mut c = vec![0.0; n];
    let mut r = vec![0.0; n];
    for i in 0..n {
        let im = (i + n - 1) % n;
        let ip = (i + 1) % n;
        a[i] = h[im];
        b[i] = 2.0 * (h[im] + h[i]);
        c[i] = h[i];
        r[i] = 6.0 * ((y[ip] - y[i]) / h[i] - (y[i] - y[im]) / h[im]);
    }
    let alpha = c[n - 1];
    let beta = a[0];
    let gamma = -b[0];
    let mut bb = b.clone();
    bb[0] -= gamma;
    bb[n - 1] -= alpha * beta / gamma;
    let sol = thomas(&a, &bb, &c, &r);
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = alpha;
    let z = thomas(&a, &bb, &c, &u);
    let fact = (sol[0] + beta * sol[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
    sol.iter().zip(&z).map(|(s, zz)| s - fact * zz).collect()
}

fn thomas(a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> Vec<f64> {
    let n = d.len();
    let mut cp = vec![0.0; n];
    let mut dp = vec![0.0; n];
    cp[0] = c[0] / b[0];
    dp[0] = d[0] / b[0];
    for i in 1..n {
        let m = b[i] - a[i] * cp[i - 1];
        cp[i] = c[i] / m;
        dp[i] = (d[i] - a[i] * dp[i - 1]) / m;
    }
    let mut out = vec![0.0; n];
    out[n - 1] = dp[n - 1];
    for i in (0..n - 1).rev() {
        out[i] = dp[i] - cp[i] * out[i + 1];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_trig_polynomial() {
        let n = 512;
        let xs: Vec<f64> = (0..n)
            .map(|k| TAU * (k as f64 + 0.3 * ((k % 3) as f64)) / n as f64)
            .collect();
        let ys: Vec<f64> = xs.iter().map(|&t| 1.0 + 0.2 * t.cos()).collect();
        let s = PeriodicSpline::new(&xs, &ys).unwrap();
        for k in 0..97 {
            let t = 0.0647 * k as f64;
            let [f, df, d2f] = s.derivatives(t);
            assert!((f - 1.0 - 0.2 * t.cos()).abs() < 1e-9);
            assert!((df + 0.2 * t.sin()).abs() < 1e-5);
            assert!((d2f + 0.2 * t.cos()).abs() < 1e-3);
        }
    }
}
