//! Lawson–Hanson active-set solver for min ‖A t − b‖ subject to t ≥ 0.

use nalgebra::{DMatrix, DVector};

pub(crate) struct NnlsSolution {
    pub t: Vec<f64>,
    pub residual: f64,
}

fn solve_passive(a: &DMatrix<f64>, b: &DVector<f64>, passive: &[usize]) -> Vec<f64> {
    let sub = DMatrix::from_fn(a.nrows(), passive.len(), |i, j| a[(i, passive[j])]);
    let svd = sub.svd(true, true);
    let z = svd.solve(b, 1e-14).unwrap_or_else(|_| DVector::zeros(passive.len()));
    z.iter().copied().collect()
}

/// Columns of `a` are the generators; `b` the target.
pub(crate) fn nnls(a: &DMatrix<f64>, b: &DVector<f64>) -> NnlsSolution {
    let k = a.ncols();
    let mut x = vec![0.0; k];
    let mut passive: Vec<usize> = Vec::new();
    let tol = 1e-14 * (1.0 + a.abs().max()) * (1.0 + b.norm());
    let residual = |x: &[f64]| b - a * DVector::from_column_slice(x);
    for _ in 0..3 * k + 10 {
        let w = a.transpose() * residual(&x);
        let candidate = (0..k)
            .filter(|j| !passive.contains(j))
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(t) = candidate.filter(|&j| w[j] > tol) else {
            break;
        };
        passive.push(t);
        loop {
            let z = solve_passive(a, b, &passive);
            if z.iter().all(|&v| v > 0.0) {
                for (p, &j) in passive.iter().enumerate() {
                    x[j] = z[p];
                }
                break;
            }
            let mut alpha = f64::INFINITY;
            for (p, &j) in passive.iter().enumerate() {
                if z[p] <= 0.0 {
                    alpha = alpha.min(x[j] / (x[j] - z[p]));
                }
            }
            for (p, &j) in passive.iter().enumerate() {
                x[j] += alpha * (z[p] - x[j]);
            }
            passive.retain(|&j| x[j] > 1e-15);
            for j in 0..k {
                if !passive.contains(&j) {
                    x[j] = 0.0;
                }
            }
            if passive.is_empty() {
                break;
            }
        }
    }
    let r = residual(&x).norm();
    NnlsSolution { t: x, residual: r }
}
