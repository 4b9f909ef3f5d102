use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::integrand::Local;
use crate::sphere_geometry::{Icosphere, SymMatrix, Vector};

/// Real orthonormal spherical harmonics (no Condon–Shortley phase):
/// Y_lm ∝ P_l^m(cos ϑ) cos mφ for m ≥ 0 and P_l^|m|(cos ϑ) sin |m|φ for m < 0.
#[derive(Clone, Debug)]
pub struct HarmonicSeries {
    lmax: usize,
    /// Coefficient of Y_lm at index l² + l + m, premultiplied by the
    /// normalization constant.
    scaled: Vec<f64>,
    coeffs: Vec<f64>,
}

pub(crate) fn idx(l: usize, m: i64) -> usize {
    ((l * l + l) as i64 + m) as usize
}

/// Orthonormalization constant of Y_lm.
pub fn normalization(l: usize, m: i64) -> f64 {
    let am = m.unsigned_abs() as usize;
    // (l−m)!/(l+m)! as a running product to avoid factorial overflow.
    let mut ratio = 1.0;
    for k in (l - am + 1)..=(l + am) {
        ratio /= k as f64;
    }
    let k = ((2 * l + 1) as f64 / (4.0 * PI) * ratio).sqrt();
    if m == 0 {
        k
    } else {
        k * 2f64.sqrt()
    }
}

/// Minimal ring interface shared by plain values and second-order jets.
trait Ring: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Mul<f64, Output = Self> {}
impl Ring for f64 {}
impl Ring for Jet {}

/// Value, gradient and Hessian of a function on ℝ³.
#[derive(Clone, Copy, Debug)]
struct Jet {
    v: f64,
    g: [f64; 3],
    /// Upper triangle: xx, xy, xz, yy, yz, zz.
    h: [f64; 6],
}

const PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

impl Jet {
    fn constant(v: f64) -> Jet {
        Jet {
            v,
            g: [0.0; 3],
            h: [0.0; 6],
        }
    }

    fn coordinate(i: usize, x: f64) -> Jet {
        let mut j = Jet::constant(x);
        j.g[i] = 1.0;
        j
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, o: Jet) -> Jet {
        self.v += o.v;
        for i in 0..3 {
            self.g[i] += o.g[i];
        }
        for i in 0..6 {
            self.h[i] += o.h[i];
        }
        self
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        self + o * -1.0
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(mut self, s: f64) -> Jet {
        self.v *= s;
        for x in &mut self.g {
            *x *= s;
        }
        for x in &mut self.h {
            *x *= s;
        }
        self
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let mut r = Jet::constant(self.v * o.v);
        for i in 0..3 {
            r.g[i] = self.v * o.g[i] + o.v * self.g[i];
        }
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            r.h[k] = self.v * o.h[k] + o.v * self.h[k] + self.g[i] * o.g[j] + self.g[j] * o.g[i];
        }
        r
    }
}

impl HarmonicSeries {
    /// Builds from `(l, m, coefficient)` triples; repeated entries add.
    pub fn new(terms: &[(usize, i64, f64)]) -> Result<Self> {
        let lmax = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut coeffs = vec![0.0; (lmax + 1) * (lmax + 1)];
        for &(l, m, c) in terms {
            if m.unsigned_abs() as usize > l {
                return Err(Error::InvalidArgument(format!("|m| > l in Y({l},{m})")));
            }
            if !c.is_finite() {
                return Err(Error::InvalidArgument(format!("non-finite coefficient for Y({l},{m})")));
            }
            coeffs[idx(l, m)] += c;
        }
        Ok(Self::from_dense(lmax, coeffs))
    }

    /// Coefficients laid out at index l² + l + m.
    pub fn from_dense(lmax: usize, coeffs: Vec<f64>) -> Self {
        assert_eq!(coeffs.len(), (lmax + 1) * (lmax + 1));
        let mut scaled = coeffs.clone();
        for l in 0..=lmax {
            for m in -(l as i64)..=(l as i64) {
                scaled[idx(l, m)] *= normalization(l, m);
            }
        }
        HarmonicSeries { lmax, scaled, coeffs }
    }

    pub fn lmax(&self) -> usize {
        self.lmax
    }

    pub fn coefficient(&self, l: usize, m: i64) -> f64 {
        if l > self.lmax || m.unsigned_abs() as usize > l {
            0.0
        } else {
            self.coeffs[idx(l, m)]
        }
    }

    /// Nonzero `(l, m, c)` triples in index order.
    pub fn terms(&self) -> Vec<(usize, i64, f64)> {
        let mut out = Vec::new();
        for l in 0..=self.lmax {
            for m in -(l as i64)..=(l as i64) {
                let c = self.coeffs[idx(l, m)];
                if c != 0.0 {
                    out.push((l, m, c));
                }
            }
        }
        out
    }

    /// Degree-l homogeneous parts h_l(x, y, z) = Σ_m c_lm K_lm r^l Y_lm.
    fn parts<T: Ring>(&self, x: T, y: T, z: T, r2: T, one: T, out: &mut Vec<T>) {
        let zero = one * 0.0;
        out.clear();
        out.resize(self.lmax + 1, zero);
        let (mut a, mut b) = (one, zero);
        let mut pmm = one;
        for m in 0..=self.lmax {
            if m > 0 {
                (a, b) = (x * a - y * b, x * b + y * a);
                pmm = pmm * (2 * m - 1) as f64;
            }
            let mi = m as i64;
            let mut p_prev = zero;
            let mut p = pmm;
            for l in m..=self.lmax {
                if l == m + 1 {
                    p_prev = p;
                    p = z * pmm * (2 * m + 1) as f64;
                } else if l > m + 1 {
                    let next = (z * p * (2 * l - 1) as f64 - r2 * p_prev * (l + m - 1) as f64) * (1.0 / (l - m) as f64);
                    p_prev = p;
                    p = next;
                }
                let ca = self.scaled[idx(l, mi)];
                let cb = if m > 0 { self.scaled[idx(l, -mi)] } else { 0.0 };
                if ca != 0.0 || cb != 0.0 {
                    out[l] = out[l] + p * (a * ca + b * cb);
                }
            }
        }
    }

    pub fn value(&self, x: &Vector) -> f64 {
        let mut parts = Vec::with_capacity(self.lmax + 1);
        self.parts(x[0], x[1], x[2], 1.0, 1.0, &mut parts);
        parts.iter().sum()
    }

    /// Jet of the 0-homogeneous extension F = Σ h_l / r^l at a unit point.
    pub fn local(&self, x: &Vector) -> Local {
        let (px, py, pz) = (x[0], x[1], x[2]);
        let jx = Jet::coordinate(0, px);
        let jy = Jet::coordinate(1, py);
        let jz = Jet::coordinate(2, pz);
        let mut r2 = Jet::constant(1.0);
        r2.g = [2.0 * px, 2.0 * py, 2.0 * pz];
        r2.h = [2.0, 0.0, 0.0, 2.0, 0.0, 2.0];
        let mut parts = Vec::with_capacity(self.lmax + 1);
        self.parts(jx, jy, jz, r2, Jet::constant(1.0), &mut parts);
        let mut total = Jet::constant(0.0);
        for (l, part) in parts.iter().enumerate() {
            // (r²)^(−l/2) at r = 1: derivatives −l/2 and (l/2)(l/2 + 1) in r².
            let d1 = -(l as f64) / 2.0;
            let d2 = (l as f64 / 2.0) * (l as f64 / 2.0 + 1.0);
            let mut s = Jet::constant(1.0);
            for i in 0..3 {
                s.g[i] = d1 * r2.g[i];
            }
            for (k, &(i, j)) in PAIRS.iter().enumerate() {
                s.h[k] = d2 * r2.g[i] * r2.g[j] + d1 * r2.h[k];
            }
            total = total + *part * s;
        }
        let grad = Vector::new(&total.g);
        let mut h = SymMatrix::zeros(3);
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            h.m[i][j] = total.h[k];
            h.m[j][i] = total.h[k];
        }
        Local {
            value: total.v,
            grad: grad.reject(x),
            hess: h.project(x),
        }
    }

    /// Values of every basis function Y_lm (l ≤ lmax) at a unit point, in
    /// index order.
    pub fn basis_values(lmax: usize, x: &Vector) -> Vec<f64> {
        let mut out = vec![0.0; (lmax + 1) * (lmax + 1)];
        let (px, py, pz) = (x[0], x[1], x[2]);
        let (mut a, mut b) = (1.0, 0.0);
        let mut pmm = 1.0;
        for m in 0..=lmax {
            if m > 0 {
                (a, b) = (px * a - py * b, px * b + py * a);
                pmm *= (2 * m - 1) as f64;
            }
            let mi = m as i64;
            let (mut p_prev, mut p) = (0.0, pmm);
            for l in m..=lmax {
                if l == m + 1 {
                    p_prev = p;
                    p = pz * pmm * (2 * m + 1) as f64;
                } else if l > m + 1 {
                    let next = (pz * p * (2 * l - 1) as f64 - p_prev * (l + m - 1) as f64) / (l - m) as f64;
                    p_prev = p;
                    p = next;
                }
                out[idx(l, mi)] = normalization(l, mi) * p * a;
                if m > 0 {
                    out[idx(l, -mi)] = normalization(l, -mi) * p * b;
                }
            }
        }
        out
    }
}

/// Least-squares design data for a fixed point set and degree.
struct Design {
    basis: DMatrix<f64>,
    normal: Cholesky<f64, Dyn>,
}

impl Design {
    fn new(points: &[Vector], lmax: usize) -> Result<Design> {
        let k = (lmax + 1) * (lmax + 1);
        if points.len() < k {
            return Err(Error::InvalidArgument(format!(
                "{} samples cannot determine {k} harmonic coefficients",
                points.len()
            )));
        }
        let mut basis = DMatrix::zeros(points.len(), k);
        for (i, p) in points.iter().enumerate() {
            for (j, v) in HarmonicSeries::basis_values(lmax, p).into_iter().enumerate() {
                basis[(i, j)] = v;
            }
        }
        let normal = (basis.transpose() * &basis)
            .cholesky()
            .ok_or_else(|| Error::InvalidArgument("sample points do not determine a harmonic fit".into()))?;
        Ok(Design { basis, normal })
    }

    fn solve(&self, values: &[f64], lmax: usize) -> HarmonicSeries {
        let b = DVector::from_column_slice(values);
        let rhs = self.basis.transpose() * b;
        let c = self.normal.solve(&rhs);
        HarmonicSeries::from_dense(lmax, c.iter().copied().collect())
    }
}

static DESIGNS: Lazy<Mutex<HashMap<(usize, usize), Arc<Design>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

impl HarmonicSeries {
    /// Least-squares fit of degree `lmax` to values at arbitrary unit points.
    pub fn fit(points: &[Vector], values: &[f64], lmax: usize) -> Result<Self> {
        if points.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                got: values.len(),
            });
        }
        Ok(Design::new(points, lmax)?.solve(values, lmax))
    }

    /// Least-squares fit to values on the vertices of an icosphere level; the
    /// factorization is computed once per (level, degree).
    pub fn fit_icosphere(level: usize, values: &[f64], lmax: usize) -> Result<Self> {
        let ico = Icosphere::cached(level);
        if values.len() != ico.len() {
            return Err(Error::DimensionMismatch {
                expected: ico.len(),
                got: values.len(),
            });
        }
        let design = {
            let mut cache = DESIGNS.lock().unwrap_or_else(|e| e.into_inner());
            match cache.get(&(level, lmax)) {
                Some(d) => d.clone(),
                None => {
                    let pts: Vec<Vector> = ico.vertices.iter().map(|p| p.coords()).collect();
                    let d = Arc::new(Design::new(&pts, lmax)?);
                    cache.insert((level, lmax), d.clone());
                    d
                }
            }
        };
        Ok(design.solve(values, lmax))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(x: f64, y: f64, z: f64) -> Vector {
        Vector::new(&[x, y, z]).normalized().unwrap()
    }

    #[test]
    fn low_degree_closed_forms() {
        let p = unit(0.3, -0.4, 0.8);
        let b = HarmonicSeries::basis_values(2, &p);
        let k = |c: f64| (c / (4.0 * PI)).sqrt();
        assert!((b[idx(0, 0)] - k(1.0)).abs() < 1e-15);
        assert!((b[idx(1, 0)] - k(3.0) * p[2]).abs() < 1e-15);
        assert!((b[idx(1, 1)] - k(3.0) * p[0]).abs() < 1e-15);
        assert!((b[idx(1, -1)] - k(3.0) * p[1]).abs() < 1e-15);
        assert!((b[idx(2, 1)] - k(15.0) * p[0] * p[2]).abs() < 1e-15);
        assert!((b[idx(2, -2)] - k(15.0) * p[0] * p[1]).abs() < 1e-15);
        assert!((b[idx(2, 0)] - k(5.0) * 0.5 * (3.0 * p[2] * p[2] - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn series_value_matches_basis() {
        let terms: Vec<(usize, i64, f64)> = (0..=6usize)
            .flat_map(|l| (-(l as i64)..=l as i64).map(move |m| (l, m, 0.1 * (l as f64 + 0.3 * m as f64).sin())))
            .collect();
        let s = HarmonicSeries::new(&terms).unwrap();
        let p = unit(-0.2, 0.7, 0.1);
        let b = HarmonicSeries::basis_values(6, &p);
        let direct: f64 = terms.iter().map(|&(l, m, c)| c * b[idx(l, m)]).sum();
        assert!((s.value(&p) - direct).abs() < 1e-14);
        assert!((s.local(&p).value - direct).abs() < 1e-14);
    }
}
