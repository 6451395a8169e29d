use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::Matrix;
use crate::math::{cos, sin, sqrt, PI};
use crate::Complex64;

/// A real `2 pi`-periodic loop `u(tau) = c_0 + sum_{k=1..N} (c_k e^{i k tau} + c.c.)`.
///
/// Only `c_0, ..., c_N` are stored; `c_{-k} = conj(c_k)`. The imaginary part of
/// `c_0` is kept at zero.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopState {
    pub dim: usize,
    pub coeffs: Vec<Vec<Complex64>>,
}

impl LoopState {
    pub fn zeros(dim: usize, n_modes: usize) -> Self {
        Self {
            dim,
            coeffs: vec![vec![Complex64::new(0.0, 0.0); dim]; n_modes + 1],
        }
    }

    pub fn n_modes(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Length of the real layout `[Re c_0, (Re c_k, Im c_k) for k = 1..N]`.
    pub fn real_len(&self) -> usize {
        real_len(self.dim, self.n_modes())
    }

    pub fn to_real(&self) -> Vec<f64> {
        let d = self.dim;
        let mut x = vec![0.0; self.real_len()];
        for l in 0..d {
            x[l] = self.coeffs[0][l].re;
        }
        for k in 1..=self.n_modes() {
            let base = d + 2 * d * (k - 1);
            for l in 0..d {
                x[base + l] = self.coeffs[k][l].re;
                x[base + d + l] = self.coeffs[k][l].im;
            }
        }
        x
    }

    pub fn from_real(dim: usize, n_modes: usize, x: &[f64]) -> Self {
        let mut u = Self::zeros(dim, n_modes);
        for l in 0..dim {
            u.coeffs[0][l] = Complex64::new(x[l], 0.0);
        }
        for k in 1..=n_modes {
            let base = dim + 2 * dim * (k - 1);
            for l in 0..dim {
                u.coeffs[k][l] = Complex64::new(x[base + l], x[base + dim + l]);
            }
        }
        u
    }

    /// `u(tau)`.
    pub fn eval(&self, tau: f64) -> Vec<f64> {
        let mut out: Vec<f64> = self.coeffs[0].iter().map(|z| z.re).collect();
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            let w = Complex64::new(cos(k as f64 * tau), sin(k as f64 * tau));
            for (o, z) in out.iter_mut().zip(c) {
                *o += 2.0 * (z * w).re;
            }
        }
        out
    }

    /// `u_tau(tau)`.
    pub fn eval_derivative(&self, tau: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            let w = Complex64::new(0.0, k as f64)
                * Complex64::new(cos(k as f64 * tau), sin(k as f64 * tau));
            for (o, z) in out.iter_mut().zip(c) {
                *o += 2.0 * (z * w).re;
            }
        }
        out
    }

    /// `T_theta u = u(. + theta)`.
    pub fn translate(&self, theta: f64) -> Self {
        let mut u = self.clone();
        for (k, c) in u.coeffs.iter_mut().enumerate() {
            let w = Complex64::new(cos(k as f64 * theta), sin(k as f64 * theta));
            c.iter_mut().for_each(|z| *z *= w);
        }
        u
    }

    /// `T u = R u(-.)`.
    pub fn reverse(&self, r: &Matrix) -> Self {
        let mut u = self.clone();
        for (out, c) in u.coeffs.iter_mut().zip(&self.coeffs) {
            let cc: Vec<Complex64> = c.iter().map(|z| z.conj()).collect();
            r.mul_cvec(&cc, out);
        }
        u
    }

    /// `(u, v) = sum_{|k| <= N} c_k conj(c'_k)`, i.e. the mean of `<u, v>` over a period.
    pub fn inner(&self, other: &Self) -> f64 {
        let mut s = 0.0;
        for (k, (a, b)) in self.coeffs.iter().zip(&other.coeffs).enumerate() {
            let t: f64 = a.iter().zip(b).map(|(x, y)| (x * y.conj()).re).sum();
            s += if k == 0 { t } else { 2.0 * t };
        }
        s
    }

    pub fn norm(&self) -> f64 {
        sqrt(self.inner(self))
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn add_scaled(&self, a: f64, other: &Self) -> Self {
        let mut u = self.clone();
        for (c, o) in u.coeffs.iter_mut().zip(&other.coeffs) {
            for (z, w) in c.iter_mut().zip(o) {
                *z += w * a;
            }
        }
        u
    }

    /// Same loop with `n_modes` modes (truncated or zero-padded).
    pub fn resized(&self, n_modes: usize) -> Self {
        let mut u = Self::zeros(self.dim, n_modes);
        for (k, c) in self.coeffs.iter().enumerate().take(n_modes + 1) {
            u.coeffs[k] = c.clone();
        }
        u
    }

    /// `max_k |R conj(c_k) - c_k|`, which vanishes iff `T u = u`.
    pub fn reversibility_residual(&self, r: &Matrix) -> f64 {
        let t = self.reverse(r);
        t.coeffs
            .iter()
            .zip(&self.coeffs)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max)
    }
}

pub(crate) fn real_len(dim: usize, n_modes: usize) -> usize {
    dim * (2 * n_modes + 1)
}

/// Collocation on the `M = 4N + 1` equispaced nodes `tau_j = 2 pi j / M`.
#[derive(Debug, Clone)]
pub struct Collocation {
    pub n_modes: usize,
    pub nodes: usize,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl Collocation {
    pub fn new(n_modes: usize) -> Self {
        let m = 4 * n_modes + 1;
        let mut c = vec![0.0; (n_modes + 1) * m];
        let mut s = vec![0.0; (n_modes + 1) * m];
        for k in 0..=n_modes {
            for j in 0..m {
                // reduce k j mod M before scaling for exact periodicity
                let a = 2.0 * PI * ((k * j) % m) as f64 / m as f64;
                c[k * m + j] = cos(a);
                s[k * m + j] = sin(a);
            }
        }
        Self {
            n_modes,
            nodes: m,
            cos: c,
            sin: s,
        }
    }

    pub fn tau(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.nodes as f64
    }

    #[inline]
    pub(crate) fn cs(&self, k: usize, j: usize) -> (f64, f64) {
        (self.cos[k * self.nodes + j], self.sin[k * self.nodes + j])
    }

    /// Node values and `tau`-derivatives, each `nodes x dim` row-major.
    pub fn synthesize(&self, u: &LoopState) -> (Vec<f64>, Vec<f64>) {
        let d = u.dim;
        let m = self.nodes;
        let mut val = vec![0.0; m * d];
        let mut der = vec![0.0; m * d];
        for j in 0..m {
            let v = &mut val[j * d..(j + 1) * d];
            for l in 0..d {
                v[l] = u.coeffs[0][l].re;
            }
            for k in 1..=self.n_modes.min(u.n_modes()) {
                let (c, s) = self.cs(k, j);
                let kf = k as f64;
                for l in 0..d {
                    let z = u.coeffs[k][l];
                    val[j * d + l] += 2.0 * (z.re * c - z.im * s);
                    der[j * d + l] -= 2.0 * kf * (z.re * s + z.im * c);
                }
            }
        }
        (val, der)
    }

    /// Fourier coefficients `c_k = (1/M) sum_j f_j e^{-i k tau_j}`, `k <= N`,
    /// of node data `f` (`nodes x dim`).
    pub fn analyze(&self, f: &[f64], dim: usize) -> LoopState {
        let m = self.nodes;
        let mut u = LoopState::zeros(dim, self.n_modes);
        let inv = 1.0 / m as f64;
        for k in 0..=self.n_modes {
            let c = &mut u.coeffs[k];
            for j in 0..m {
                let (co, si) = self.cs(k, j);
                for l in 0..dim {
                    let v = f[j * dim + l];
                    c[l].re += v * co;
                    c[l].im -= v * si;
                }
            }
            for z in c.iter_mut() {
                *z *= inv;
            }
            if k == 0 {
                c.iter_mut().for_each(|z| z.im = 0.0);
            }
        }
        u
    }
}
