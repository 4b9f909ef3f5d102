use crate::error::{Error, Result};

/// a₀ + Σₖ (aₖ cos kθ + bₖ sin kθ) on S¹.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierSeries {
    a0: f64,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl FourierSeries {
    /// `cos[k−1]` and `sin[k−1]` hold the degree-k coefficients.
    pub fn new(a0: f64, cos: &[f64], sin: &[f64]) -> Result<Self> {
        if !a0.is_finite() || !cos.iter().chain(sin).all(|c| c.is_finite()) {
            return Err(Error::InvalidArgument("non-finite Fourier coefficient".into()));
        }
        let k = cos.len().max(sin.len());
        let mut c = cos.to_vec();
        let mut s = sin.to_vec();
        c.resize(k, 0.0);
        s.resize(k, 0.0);
        // Trailing zero pairs only cost evaluation time.
        while c.last() == Some(&0.0) && s.last() == Some(&0.0) {
            c.pop();
            s.pop();
        }
        Ok(FourierSeries { a0, cos: c, sin: s })
    }

    pub fn degree(&self) -> usize {
        self.cos.len()
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn cos_coeffs(&self) -> &[f64] {
        &self.cos
    }

    pub fn sin_coeffs(&self) -> &[f64] {
        &self.sin
    }

    pub fn value(&self, phi: f64) -> f64 {
        let (c1, s1) = (phi.cos(), phi.sin());
        let (mut ck, mut sk) = (1.0, 0.0);
        let mut v = self.a0;
        for (a, b) in self.cos.iter().zip(&self.sin) {
            (ck, sk) = (ck * c1 - sk * s1, sk * c1 + ck * s1);
            v += a * ck + b * sk;
        }
        v
    }

    /// (f, f′, f″) at `phi`.
    pub fn derivatives(&self, phi: f64) -> [f64; 3] {
        let (c1, s1) = (phi.cos(), phi.sin());
        let (mut ck, mut sk) = (1.0, 0.0);
        let mut d = [self.a0, 0.0, 0.0];
        for (k, (a, b)) in self.cos.iter().zip(&self.sin).enumerate() {
            (ck, sk) = (ck * c1 - sk * s1, sk * c1 + ck * s1);
            let kf = (k + 1) as f64;
            let even = a * ck + b * sk;
            d[0] += even;
            d[1] += kf * (b * ck - a * sk);
            d[2] -= kf * kf * even;
        }
        d
    }
}
