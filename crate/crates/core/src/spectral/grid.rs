use alloc::vec;
use alloc::vec::Vec;

use crate::dispersion::FluidParams;
use crate::error::{domain, Result};
use crate::math::{cos, PI};

/// Default number of collocation points.
pub const DEFAULT_POINTS: usize = 64;

/// How Chebyshev points `x in [-1, 1]` are mapped to depths `y <= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridMap {
    /// `y = (x - 1) / (2 beta)`, covering `[-1/beta, 0]`.
    Finite { depth: f64 },
    /// `y = l (x - 1) / (x + 1)`, covering `(-inf, 0]`.
    Algebraic { scale: f64 },
}

/// Chebyshev-Lobatto collocation grid in `y` with Clenshaw-Curtis weights.
/// Points are ordered from `y = 0` downwards.
#[derive(Debug, Clone, PartialEq)]
pub struct YGrid {
    pub map: GridMap,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// Quadrature weights for `integral dy`.
    pub w: Vec<f64>,
    /// `dy/dx` at each point.
    pub dydx: Vec<f64>,
}

impl YGrid {
    pub fn new(map: GridMap, n: usize) -> Result<Self> {
        if n < 3 {
            return Err(domain("a y-grid needs at least 3 points"));
        }
        match map {
            GridMap::Finite { depth } if !(depth > 0.0 && depth.is_finite()) => {
                return Err(domain("finite grid needs a positive depth"))
            }
            GridMap::Algebraic { scale } if !(scale > 0.0 && scale.is_finite()) => {
                return Err(domain("algebraic grid needs a positive scale"))
            }
            _ => {}
        }
        let x = lobatto(n);
        let cc = clenshaw_curtis(n);
        let mut y = Vec::with_capacity(n);
        let mut w = Vec::with_capacity(n);
        let mut dydx = Vec::with_capacity(n);
        for (j, &xj) in x.iter().enumerate() {
            let (yj, dj) = match map {
                GridMap::Finite { depth } => (0.5 * depth * (xj - 1.0), 0.5 * depth),
                GridMap::Algebraic { scale } => {
                    if j == n - 1 {
                        (f64::NEG_INFINITY, f64::INFINITY)
                    } else {
                        let p = xj + 1.0;
                        (scale * (xj - 1.0) / p, 2.0 * scale / (p * p))
                    }
                }
            };
            y.push(yj);
            dydx.push(dj);
            w.push(if dj.is_finite() { cc[j] * dj } else { 0.0 });
        }
        Ok(Self { map, x, y, w, dydx })
    }

    /// Grid on `[-1/beta, 0]`, or on the half line with unit scale for
    /// `beta = 0`.
    pub fn for_params(params: &FluidParams, n: usize) -> Result<Self> {
        if params.is_deep() {
            Self::new(GridMap::Algebraic { scale: 1.0 }, n)
        } else {
            Self::new(
                GridMap::Finite {
                    depth: 1.0 / params.beta,
                },
                n,
            )
        }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Points where values are finite (the algebraic map sends the last
    /// node to minus infinity).
    pub fn finite_points(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.y
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, y)| y.is_finite())
    }

    /// Derivative in `y` of sampled values by Chebyshev differentiation.
    pub fn differentiate(&self, f: &[crate::Complex64]) -> Vec<crate::Complex64> {
        let d = cheb_matrix(&self.x);
        let n = self.len();
        let mut out = vec![crate::Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            if !self.dydx[i].is_finite() {
                continue;
            }
            let mut acc = crate::Complex64::new(0.0, 0.0);
            for j in 0..n {
                if f[j].is_finite() {
                    acc += f[j] * d[i * n + j];
                }
            }
            out[i] = acc / self.dydx[i];
        }
        out
    }
}

/// Chebyshev-Lobatto points `cos(pi j / (n - 1))`, from `1` to `-1`.
pub fn lobatto(n: usize) -> Vec<f64> {
    let m = (n - 1) as f64;
    (0..n).map(|j| cos(PI * j as f64 / m)).collect()
}

/// Clenshaw-Curtis weights for the Lobatto points on `[-1, 1]`.
pub fn clenshaw_curtis(n: usize) -> Vec<f64> {
    let nn = n - 1;
    let m = nn as f64;
    (0..n)
        .map(|j| {
            let c = if j == 0 || j == nn { 1.0 } else { 2.0 };
            let mut s = 0.0;
            for k in 1..=nn / 2 {
                let b = if 2 * k == nn { 1.0 } else { 2.0 };
                s += b / (4.0 * (k * k) as f64 - 1.0) * cos(2.0 * PI * (j * k) as f64 / m);
            }
            c / m * (1.0 - s)
        })
        .collect()
}

/// Row-major Chebyshev differentiation matrix on the Lobatto points.
pub fn cheb_matrix(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let nn = n - 1;
    let c = |i: usize| -> f64 {
        let base = if i == 0 || i == nn { 2.0 } else { 1.0 };
        if i % 2 == 0 {
            base
        } else {
            -base
        }
    };
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        let mut row = 0.0;
        for j in 0..n {
            if i != j {
                let v = c(i) / c(j) / (x[i] - x[j]);
                d[i * n + j] = v;
                row += v;
            }
        }
        d[i * n + i] = -row;
    }
    d
}
