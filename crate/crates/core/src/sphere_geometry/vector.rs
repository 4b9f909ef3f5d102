use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

/// Largest ambient dimension used anywhere (S³ ⊂ ℝ⁴ for n = 2 lifts).
pub const MAX_DIM: usize = 4;

/// Small stack-allocated vector of ℝ^d with d ≤ 4.
///
/// Components beyond `dim` are always zero, so derived equality and the
/// arithmetic below never see stale data.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Vector {
    c: [f64; MAX_DIM],
    dim: usize,
}

impl Vector {
    pub fn new(coords: &[f64]) -> Self {
        assert!(
            !coords.is_empty() && coords.len() <= MAX_DIM,
            "vector dimension {} out of range",
            coords.len()
        );
        let mut c = [0.0; MAX_DIM];
        c[..coords.len()].copy_from_slice(coords);
        Vector { c, dim: coords.len() }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim));
        Vector { c: [0.0; MAX_DIM], dim }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.c[i] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.c[..self.dim]
    }

    pub fn dot(&self, o: &Vector) -> f64 {
        debug_assert_eq!(self.dim, o.dim);
        self.c[0] * o.c[0] + self.c[1] * o.c[1] + self.c[2] * o.c[2] + self.c[3] * o.c[3]
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Unit vector in the same direction, or `None` for zero/non-finite input.
    pub fn normalized(&self) -> Option<Vector> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(*self * (1.0 / n))
        } else {
            None
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_slice().iter().all(|x| x.is_finite())
    }

    /// Appends one coordinate: ℝ^d → ℝ^{d+1}.
    pub fn extend(&self, last: f64) -> Vector {
        let mut v = *self;
        v.c[self.dim] = last;
        v.dim += 1;
        v
    }

    /// Drops the last coordinate.
    pub fn truncate(&self) -> Vector {
        let mut v = *self;
        v.dim -= 1;
        v.c[v.dim] = 0.0;
        v
    }

    pub fn last(&self) -> f64 {
        self.c[self.dim - 1]
    }

    /// Component of `self` orthogonal to the unit vector `u`.
    pub fn reject(&self, u: &Vector) -> Vector {
        *self - *u * self.dot(u)
    }

    pub fn max_abs_diff(&self, o: &Vector) -> f64 {
        (*self - *o).as_slice().iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Cross product in ℝ³.
    pub fn cross(&self, o: &Vector) -> Vector {
        debug_assert!(self.dim == 3 && o.dim == 3);
        let (a, b) = (&self.c, &o.c);
        Vector::new(&[
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ])
    }

    /// Generalized cross product of three vectors of ℝ⁴: the vector whose dot
    /// product with any w equals det[a, b, c, w].
    pub fn cross4(a: &Vector, b: &Vector, c: &Vector) -> Vector {
        debug_assert!(a.dim == 4 && b.dim == 4 && c.dim == 4);
        let m = [a.c, b.c, c.c];
        let minor = |skip: usize| -> f64 {
            let cols: Vec<usize> = (0..4).filter(|&j| j != skip).collect();
            let e = |r: usize, k: usize| m[r][cols[k]];
            e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
                + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
        };
        // Cofactor expansion of det[a; b; c; w] along the last row.
        Vector::new(&[-minor(0), minor(1), -minor(2), minor(3)])
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.as_slice()[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        assert!(i < self.dim);
        &mut self.c[i]
    }
}

impl Add for Vector {
    type Output = Vector;
    fn add(mut self, o: Vector) -> Vector {
        debug_assert_eq!(self.dim, o.dim);
        for i in 0..MAX_DIM {
            self.c[i] += o.c[i];
        }
        self
    }
}

impl AddAssign for Vector {
    fn add_assign(&mut self, o: Vector) {
        *self = *self + o;
    }
}

impl Sub for Vector {
    type Output = Vector;
    fn sub(mut self, o: Vector) -> Vector {
        debug_assert_eq!(self.dim, o.dim);
        for i in 0..MAX_DIM {
            self.c[i] -= o.c[i];
        }
        self
    }
}

impl SubAssign for Vector {
    fn sub_assign(&mut self, o: Vector) {
        *self = *self - o;
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(mut self) -> Vector {
        for x in &mut self.c {
            *x = -*x;
        }
        self
    }
}

impl Mul<f64> for Vector {
    type Output = Vector;
    fn mul(mut self, s: f64) -> Vector {
        for x in &mut self.c {
            *x *= s;
        }
        self
    }
}

impl Mul<Vector> for f64 {
    type Output = Vector;
    fn mul(self, v: Vector) -> Vector {
        v * self
    }
}

/// Symmetric matrix on ℝ^d (d ≤ 3), used for ambient Hessians.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct SymMatrix {
    pub m: [[f64; 3]; 3],
    pub dim: usize,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim <= 3);
        SymMatrix { m: [[0.0; 3]; 3], dim }
    }

    pub fn identity(dim: usize) -> Self {
        let mut s = Self::zeros(dim);
        for i in 0..dim {
            s.m[i][i] = 1.0;
        }
        s
    }

    /// s · a aᵀ
    pub fn outer(a: &Vector, s: f64) -> Self {
        let d = a.dim();
        let mut r = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                r.m[i][j] = s * a[i] * a[j];
            }
        }
        r
    }

    /// s · (a bᵀ + b aᵀ)
    pub fn sym_outer(a: &Vector, b: &Vector, s: f64) -> Self {
        let d = a.dim();
        let mut r = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                r.m[i][j] = s * (a[i] * b[j] + b[i] * a[j]);
            }
        }
        r
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zeros(self.dim);
        for i in 0..self.dim {
            let mut s = 0.0;
            for j in 0..self.dim {
                s += self.m[i][j] * v[j];
            }
            out[i] = s;
        }
        out
    }

    /// aᵀ M b
    pub fn bilinear(&self, a: &Vector, b: &Vector) -> f64 {
        a.dot(&self.apply(b))
    }

    pub fn scale(mut self, s: f64) -> Self {
        for row in &mut self.m {
            for x in row {
                *x *= s;
            }
        }
        self
    }

    pub fn add(mut self, o: &SymMatrix) -> Self {
        for i in 0..3 {
            for j in 0..3 {
                self.m[i][j] += o.m[i][j];
            }
        }
        self
    }

    /// P M P with P = I − u uᵀ.
    pub fn project(&self, u: &Vector) -> Self {
        let d = self.dim;
        let mu = self.apply(u);
        let umu = u.dot(&mu);
        let mut r = *self;
        for i in 0..d {
            for j in 0..d {
                r.m[i][j] += -u[i] * mu[j] - mu[i] * u[j] + umu * u[i] * u[j];
            }
        }
        r
    }
}
