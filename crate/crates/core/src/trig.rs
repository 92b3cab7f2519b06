//! Real trigonometric polynomials `f(θ) = a0 + Σ_k (a_k cos kθ + b_k sin kθ)`.
//!
//! Support functions of smooth bodies, boundary parametrizations and all the
//! scan functions used for root counting are built from these, so derivatives,
//! products and sup-norm bounds are exact in coefficient form.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigPoly {
    /// `cos[0]` is the constant term, `cos[k]` multiplies `cos kθ`.
    cos: Vec<f64>,
    /// `sin[0]` is always zero.
    sin: Vec<f64>,
}

impl TrigPoly {
    pub fn new(a0: f64, cos: &[f64], sin: &[f64]) -> Self {
        let deg = cos.len().max(sin.len());
        let mut c = vec![0.0; deg + 1];
        let mut s = vec![0.0; deg + 1];
        c[0] = a0;
        c[1..=cos.len()].copy_from_slice(cos);
        s[1..=sin.len()].copy_from_slice(sin);
        TrigPoly { cos: c, sin: s }.trimmed()
    }

    pub fn constant(a0: f64) -> Self {
        TrigPoly {
            cos: vec![a0],
            sin: vec![0.0],
        }
    }

    /// `cos θ`
    pub fn cos1() -> Self {
        TrigPoly::new(0.0, &[1.0], &[])
    }

    /// `sin θ`
    pub fn sin1() -> Self {
        TrigPoly::new(0.0, &[], &[1.0])
    }

    fn trimmed(mut self) -> Self {
        while self.cos.len() > 1 {
            let k = self.cos.len() - 1;
            if self.cos[k] == 0.0 && self.sin[k] == 0.0 {
                self.cos.pop();
                self.sin.pop();
            } else {
                break;
            }
        }
        self
    }

    pub fn degree(&self) -> usize {
        self.cos.len() - 1
    }

    pub fn a0(&self) -> f64 {
        self.cos[0]
    }

    /// Cosine coefficients for k = 1..=degree.
    pub fn cos_coeffs(&self) -> &[f64] {
        &self.cos[1..]
    }

    /// Sine coefficients for k = 1..=degree.
    pub fn sin_coeffs(&self) -> &[f64] {
        &self.sin[1..]
    }

    pub fn coeff(&self, k: usize) -> (f64, f64) {
        if k <= self.degree() {
            (self.cos[k], self.sin[k])
        } else {
            (0.0, 0.0)
        }
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let step = Complex64::from_polar(1.0, theta);
        let mut z = Complex64::new(1.0, 0.0);
        let mut acc = self.cos[0];
        for k in 1..=self.degree() {
            z *= step;
            acc += self.cos[k] * z.re + self.sin[k] * z.im;
        }
        acc
    }

    /// Value and first derivative at `theta`.
    pub fn value_and_slope(&self, theta: f64) -> (f64, f64) {
        let step = Complex64::from_polar(1.0, theta);
        let mut z = Complex64::new(1.0, 0.0);
        let (mut f, mut df) = (self.cos[0], 0.0);
        for k in 1..=self.degree() {
            z *= step;
            let (c, s) = (self.cos[k], self.sin[k]);
            f += c * z.re + s * z.im;
            df += k as f64 * (s * z.re - c * z.im);
        }
        (f, df)
    }

    /// Value and first three derivatives at `theta`.
    pub fn eval_derivs(&self, theta: f64) -> [f64; 4] {
        let step = Complex64::from_polar(1.0, theta);
        let mut z = Complex64::new(1.0, 0.0);
        let mut out = [self.cos[0], 0.0, 0.0, 0.0];
        for k in 1..=self.degree() {
            z *= step;
            let kf = k as f64;
            let (c, s) = (self.cos[k], self.sin[k]);
            let even = c * z.re + s * z.im;
            let odd = -c * z.im + s * z.re;
            out[0] += even;
            out[1] += kf * odd;
            out[2] -= kf * kf * even;
            out[3] -= kf * kf * kf * odd;
        }
        out
    }

    pub fn derivative(&self) -> TrigPoly {
        let mut c = vec![0.0; self.cos.len()];
        let mut s = vec![0.0; self.sin.len()];
        for k in 1..=self.degree() {
            let kf = k as f64;
            c[k] = kf * self.sin[k];
            s[k] = -kf * self.cos[k];
        }
        TrigPoly { cos: c, sin: s }.trimmed()
    }

    pub fn scale(&self, f: f64) -> TrigPoly {
        TrigPoly {
            cos: self.cos.iter().map(|x| x * f).collect(),
            sin: self.sin.iter().map(|x| x * f).collect(),
        }
        .trimmed()
    }

    pub fn add(&self, other: &TrigPoly) -> TrigPoly {
        let deg = self.degree().max(other.degree());
        let mut c = vec![0.0; deg + 1];
        let mut s = vec![0.0; deg + 1];
        for k in 0..=deg {
            let (a1, b1) = self.coeff(k);
            let (a2, b2) = other.coeff(k);
            c[k] = a1 + a2;
            s[k] = b1 + b2;
        }
        TrigPoly { cos: c, sin: s }.trimmed()
    }

    pub fn sub(&self, other: &TrigPoly) -> TrigPoly {
        self.add(&other.scale(-1.0))
    }

    pub fn add_constant(&self, t: f64) -> TrigPoly {
        let mut out = self.clone();
        out.cos[0] += t;
        out
    }

    /// `θ ↦ f(θ + π)`: odd harmonics change sign.
    pub fn shift_half_turn(&self) -> TrigPoly {
        let mut out = self.clone();
        for k in (1..=self.degree()).step_by(2) {
            out.cos[k] = -out.cos[k];
            out.sin[k] = -out.sin[k];
        }
        out
    }

    fn to_complex(&self) -> Vec<Complex64> {
        // index m + deg holds the coefficient of e^{imθ}
        let d = self.degree();
        let mut z = vec![Complex64::new(0.0, 0.0); 2 * d + 1];
        z[d] = Complex64::new(self.cos[0], 0.0);
        for k in 1..=d {
            let c = Complex64::new(self.cos[k] / 2.0, -self.sin[k] / 2.0);
            z[d + k] = c;
            z[d - k] = c.conj();
        }
        z
    }

    fn from_complex(z: &[Complex64]) -> TrigPoly {
        let d = (z.len() - 1) / 2;
        let mut c = vec![0.0; d + 1];
        let mut s = vec![0.0; d + 1];
        c[0] = z[d].re;
        for k in 1..=d {
            c[k] = 2.0 * z[d + k].re;
            s[k] = -2.0 * z[d + k].im;
        }
        TrigPoly { cos: c, sin: s }.trimmed()
    }

    pub fn mul(&self, other: &TrigPoly) -> TrigPoly {
        let a = self.to_complex();
        let b = other.to_complex();
        let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        TrigPoly::from_complex(&out)
    }

    /// Upper bound on `sup |f^(order)|`: `Σ k^order (|a_k| + |b_k|)`.
    pub fn derivative_bound(&self, order: i32) -> f64 {
        let mut acc = if order == 0 { self.cos[0].abs() } else { 0.0 };
        for k in 1..=self.degree() {
            acc += (k as f64).powi(order) * (self.cos[k].abs() + self.sin[k].abs());
        }
        acc
    }

    /// `∫_0^{2π} f² dθ`
    pub fn square_integral(&self) -> f64 {
        let mut acc = 2.0 * PI * self.cos[0] * self.cos[0];
        for k in 1..=self.degree() {
            acc += PI * (self.cos[k] * self.cos[k] + self.sin[k] * self.sin[k]);
        }
        acc
    }

    /// Values on `n` equispaced points of `[0, 2π)`.
    pub fn sample(&self, n: usize) -> Vec<f64> {
        (0..n)
            .map(|j| self.eval(2.0 * PI * j as f64 / n as f64))
            .collect()
    }
}
