use alloc::vec;
use alloc::vec::Vec;

use super::loops::{real_len, Collocation, LoopState};
use super::system::HamiltonianSystem;
use crate::error::{Error, Result};
use crate::linalg::{complex_complement, real_complement, Lu, Matrix};
use crate::math::{abs, sqrt};
use crate::Complex64;

/// Default Fourier truncation.
pub const DEFAULT_MODES: usize = 16;
/// Absolute Newton tolerance on projected residuals.
pub const NEWTON_TOL: f64 = 1e-12;
pub const NEWTON_MAX_ITER: usize = 25;

/// Coordinates on the kernel `W_1`: `u_1 = q f1 + p f2 + (A e1 + B e2) e^{i tau} + c.c.`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelCoords {
    pub a: Complex64,
    pub b: Complex64,
    pub q: f64,
    pub p: f64,
}

impl KernelCoords {
    /// The reversible slice `A = r1`, `B = r2`, `q = 0`.
    pub fn real_slice(r1: f64, r2: f64, p: f64) -> Self {
        Self {
            a: Complex64::new(r1, 0.0),
            b: Complex64::new(r2, 0.0),
            q: 0.0,
            p,
        }
    }
}

/// Solution of the range and kernel-complement equations.
#[derive(Debug, Clone)]
pub struct RangeSolution {
    /// Full loop `u_1 + h(u_1)`.
    pub u: LoopState,
    /// `h` in complement coordinates.
    pub y: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

/// Loop-space discretization of a system with its Lyapunov-Schmidt splitting.
pub struct Galerkin<'a> {
    pub sys: &'a HamiltonianSystem,
    pub col: Collocation,
    dim: usize,
    /// Columns spanning the complement `W_2` (plus the mode-0 complement of `f1, f2`).
    embed: Matrix,
}

impl<'a> Galerkin<'a> {
    pub fn new(sys: &'a HamiltonianSystem, n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::Configuration(
                "at least one Fourier mode is required".into(),
            ));
        }
        let d = sys.dim();
        let len = real_len(d, n_modes);
        let mut cols: Vec<Vec<f64>> = Vec::new();
        let unit = |i: usize| {
            let mut v = vec![0.0; len];
            v[i] = 1.0;
            v
        };
        match &sys.zero_chain {
            Some(ch) => {
                for c in real_complement(&[ch.f1.clone(), ch.f2.clone()], d)? {
                    let mut v = vec![0.0; len];
                    v[..d].copy_from_slice(&c);
                    cols.push(v);
                }
            }
            None => cols.extend((0..d).map(unit)),
        }
        for q in complex_complement(&[sys.e1.clone(), sys.e2.clone()], d)? {
            let mut a = vec![0.0; len];
            let mut b = vec![0.0; len];
            for l in 0..d {
                a[d + l] = q[l].re;
                a[2 * d + l] = q[l].im;
                b[d + l] = -q[l].im;
                b[2 * d + l] = q[l].re;
            }
            cols.push(a);
            cols.push(b);
        }
        cols.extend((3 * d..len).map(unit));
        let mut embed = Matrix::zeros(len, cols.len());
        for (c, v) in cols.iter().enumerate() {
            for (r, x) in v.iter().enumerate() {
                embed[(r, c)] = *x;
            }
        }
        Ok(Self {
            sys,
            col: Collocation::new(n_modes),
            dim: d,
            embed,
        })
    }

    pub fn n_modes(&self) -> usize {
        self.col.n_modes
    }

    pub fn complement_dim(&self) -> usize {
        self.embed.cols
    }

    pub fn has_chain(&self) -> bool {
        self.sys.zero_chain.is_some()
    }

    /// `F(u) = (kappa + mu2) J(u) u_tau - grad H(u)`, by collocation.
    pub fn residual(&self, u: &LoopState, mu1: f64, mu2: f64) -> LoopState {
        let d = self.dim;
        let (val, der) = self.col.synthesize(u);
        let mut f = vec![0.0; val.len()];
        let omega = self.sys.kappa + mu2;
        let mut g = vec![0.0; d];
        let mut ju = vec![0.0; d];
        for j in 0..self.col.nodes {
            let v = &val[j * d..(j + 1) * d];
            let jm = self.sys.structure.matrix(v, mu1);
            jm.mul_vec(&der[j * d..(j + 1) * d], &mut ju);
            self.sys.hamiltonian.gradient(v, mu1, &mut g);
            for l in 0..d {
                f[j * d + l] = omega * ju[l] - g[l];
            }
        }
        self.col.analyze(&f, d)
    }

    /// `S(u) = mean over a period of -(kappa + mu2) <alpha(u), u_tau> - H(u)`.
    pub fn action(&self, u: &LoopState, mu1: f64, mu2: f64) -> f64 {
        let d = self.dim;
        let (val, der) = self.col.synthesize(u);
        let omega = self.sys.kappa + mu2;
        let mut s = 0.0;
        for j in 0..self.col.nodes {
            let v = &val[j * d..(j + 1) * d];
            let a = self.sys.structure.alpha(v, mu1);
            let pairing: f64 = a
                .iter()
                .zip(&der[j * d..(j + 1) * d])
                .map(|(x, y)| x * y)
                .sum();
            s += -omega * pairing - self.sys.hamiltonian.value(v, mu1);
        }
        s / self.col.nodes as f64
    }

    /// Jacobian of the real layout of `F` with respect to the real layout of `u`.
    pub fn jacobian(&self, u: &LoopState, mu1: f64, mu2: f64) -> Matrix {
        let d = self.dim;
        let n = self.n_modes();
        let m = self.col.nodes;
        let len = real_len(d, n);
        let omega = self.sys.kappa + mu2;
        let (val, der) = self.col.synthesize(u);
        // per node: a = omega C - Hess (coefficient of du), b = omega J (of du_tau)
        let mut a = vec![Matrix::zeros(d, d); m];
        let mut b = vec![Matrix::zeros(d, d); m];
        let mut hess = Matrix::zeros(d, d);
        let constant = self.sys.structure.is_constant();
        for j in 0..m {
            let v = &val[j * d..(j + 1) * d];
            let ut = &der[j * d..(j + 1) * d];
            self.sys.hamiltonian.hessian(v, mu1, &mut hess);
            let jm = self.sys.structure.matrix(v, mu1);
            for k in 0..d * d {
                a[j].data[k] = -hess.data[k];
                b[j].data[k] = omega * jm.data[k];
            }
            if !constant {
                let mut w = v.to_vec();
                for s in 0..d {
                    let h = 1e-6 * (1.0 + abs(v[s]));
                    w[s] = v[s] + h;
                    let jp = self.sys.structure.matrix(&w, mu1);
                    w[s] = v[s] - h;
                    let jn = self.sys.structure.matrix(&w, mu1);
                    w[s] = v[s];
                    for r in 0..d {
                        let mut c = 0.0;
                        for l in 0..d {
                            c += (jp[(r, l)] - jn[(r, l)]) / (2.0 * h) * ut[l];
                        }
                        a[j][(r, s)] += omega * c;
                    }
                }
            }
        }
        let mut jac = Matrix::zeros(len, len);
        let inv = 1.0 / m as f64;
        let mut df = vec![0.0; m * d];
        for col in 0..len {
            let (mode, l, imag) = layout_index(d, col);
            for j in 0..m {
                let (c, s) = self.col.cs(mode, j);
                let kf = mode as f64;
                let (du, dut) = match (mode, imag) {
                    (0, _) => (1.0, 0.0),
                    (_, false) => (2.0 * c, -2.0 * kf * s),
                    (_, true) => (-2.0 * s, -2.0 * kf * c),
                };
                for r in 0..d {
                    df[j * d + r] = a[j][(r, l)] * du + b[j][(r, l)] * dut;
                }
            }
            for k in 0..=n {
                let (re_base, im_base) = if k == 0 {
                    (0, usize::MAX)
                } else {
                    (d + 2 * d * (k - 1), d + 2 * d * (k - 1) + d)
                };
                for r in 0..d {
                    let mut re = 0.0;
                    let mut im = 0.0;
                    for j in 0..m {
                        let (c, s) = self.col.cs(k, j);
                        re += df[j * d + r] * c;
                        im -= df[j * d + r] * s;
                    }
                    jac[(re_base + r, col)] = re * inv;
                    if k > 0 {
                        jac[(im_base + r, col)] = im * inv;
                    }
                }
            }
        }
        jac
    }

    /// Kernel part `u_1` of a loop.
    pub fn kernel_loop(&self, kc: &KernelCoords) -> LoopState {
        let d = self.dim;
        let mut u = LoopState::zeros(d, self.n_modes());
        if let Some(ch) = &self.sys.zero_chain {
            for l in 0..d {
                u.coeffs[0][l] = Complex64::new(kc.q * ch.f1[l] + kc.p * ch.f2[l], 0.0);
            }
        }
        for l in 0..d {
            u.coeffs[1][l] = kc.a * self.sys.e1[l] + kc.b * self.sys.e2[l];
        }
        u
    }

    fn embed_add(&self, base: &[f64], y: &[f64]) -> Vec<f64> {
        let mut x = base.to_vec();
        for (r, xr) in x.iter_mut().enumerate() {
            let row = &self.embed.data[r * self.embed.cols..(r + 1) * self.embed.cols];
            *xr += row.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
        }
        x
    }

    fn project(&self, x: &[f64]) -> Vec<f64> {
        let e = &self.embed;
        let mut out = vec![0.0; e.cols];
        for (r, xr) in x.iter().enumerate() {
            if *xr == 0.0 {
                continue;
            }
            let row = &e.data[r * e.cols..(r + 1) * e.cols];
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * xr;
            }
        }
        out
    }

    /// `E^T J E` for a full Jacobian `J`.
    fn reduce_jacobian(&self, jac: &Matrix) -> Matrix {
        self.embed.transpose().mul(&jac.mul(&self.embed))
    }

    /// Solves the range equation together with the mode-0 complement
    /// equation: finds `h` in the complement with `(I - Pi) F(u_1 + h) = 0`.
    pub fn solve_h(
        &self,
        kc: &KernelCoords,
        mu1: f64,
        mu2: f64,
        warm: Option<&[f64]>,
    ) -> Result<RangeSolution> {
        let base = self.kernel_loop(kc).to_real();
        let mut y = match warm {
            Some(w) if w.len() == self.embed.cols => w.to_vec(),
            _ => vec![0.0; self.embed.cols],
        };
        let (d, n) = (self.dim, self.n_modes());
        let mut residual = f64::INFINITY;
        for it in 0..=NEWTON_MAX_ITER {
            let x = self.embed_add(&base, &y);
            let u = LoopState::from_real(d, n, &x);
            let g = self.project(&self.residual(&u, mu1, mu2).to_real());
            residual = norm2(&g);
            if residual <= NEWTON_TOL {
                return Ok(RangeSolution {
                    u,
                    y,
                    iterations: it,
                    residual,
                });
            }
            if it == NEWTON_MAX_ITER || !residual.is_finite() {
                break;
            }
            let jr = self.reduce_jacobian(&self.jacobian(&u, mu1, mu2));
            let lu = Lu::new(&jr)?;
            let step = lu.solve(&g);
            y.iter_mut().zip(&step).for_each(|(a, b)| *a -= b);
        }
        Err(Error::NonConvergence {
            stage: "range equation",
            iterations: NEWTON_MAX_ITER,
            residual,
        })
    }

    /// `h(u_1)` as a loop.
    pub fn h(&self, kc: &KernelCoords, mu1: f64, mu2: f64) -> Result<LoopState> {
        let sol = self.solve_h(kc, mu1, mu2, None)?;
        let x = self.embed_add(&vec![0.0; self.embed.rows], &sol.y);
        Ok(LoopState::from_real(self.dim, self.n_modes(), &x))
    }

    /// Reduced action `s(u_1) = S(u_1 + h(u_1))`.
    pub fn reduced_action(&self, kc: &KernelCoords, mu1: f64, mu2: f64) -> Result<f64> {
        let sol = self.solve_h(kc, mu1, mu2, None)?;
        Ok(self.action(&sol.u, mu1, mu2))
    }

    /// Reduced action on the reversible slice as a function of
    /// `(r1^2, r2^2, p, mu1, mu2)`.
    pub fn reduced_action_sq(&self, x1: f64, x2: f64, p: f64, mu1: f64, mu2: f64) -> Result<f64> {
        self.reduced_action(
            &KernelCoords::real_slice(sqrt(x1.max(0.0)), sqrt(x2.max(0.0)), p),
            mu1,
            mu2,
        )
    }

    /// Reduced equations `(d s~/d r1^2, d s~/d r2^2, d s~/d p)` on the slice
    /// `A = r1`, `B = r2` (the last entry only with a zero chain), with the
    /// range solution used.
    pub fn reduced_gradient(
        &self,
        r1: f64,
        r2: f64,
        p: f64,
        mu1: f64,
        mu2: f64,
        warm: Option<&[f64]>,
    ) -> Result<(Vec<f64>, RangeSolution)> {
        let kc = KernelCoords::real_slice(r1, r2, p);
        let sol = self.solve_h(&kc, mu1, mu2, warm)?;
        let f = self.residual(&sol.u, mu1, mu2);
        let d = self.dim;
        let mut jac_cache: Option<(Matrix, Lu)> = None;
        let mut out = Vec::with_capacity(3);
        for (r, e) in [(r1, &self.sys.e1), (r2, &self.sys.e2)] {
            let gi = if abs(r) >= 1e-6 {
                herm(&f.coeffs[1], e).re / r
            } else {
                if jac_cache.is_none() {
                    let jf = self.jacobian(&sol.u, mu1, mu2);
                    let lu = Lu::new(&self.reduce_jacobian(&jf))?;
                    jac_cache = Some((jf, lu));
                }
                let (jf, lu) = jac_cache.as_ref().unwrap();
                let mut v = vec![0.0; self.embed.rows];
                for l in 0..d {
                    v[d + l] = e[l].re;
                    v[2 * d + l] = e[l].im;
                }
                let mut jv = vec![0.0; v.len()];
                jf.mul_vec(&v, &mut jv);
                let dy = lu.solve(&self.project(&jv));
                let w: Vec<f64> = self.embed_add(&v, &dy.iter().map(|x| -x).collect::<Vec<_>>());
                jf.mul_vec(&w, &mut jv);
                let c1: Vec<Complex64> = (0..d)
                    .map(|l| Complex64::new(jv[d + l], jv[2 * d + l]))
                    .collect();
                herm(&c1, e).re
            };
            out.push(gi);
        }
        if let Some(ch) = &self.sys.zero_chain {
            out.push(f.coeffs[0].iter().zip(&ch.f2).map(|(z, b)| z.re * b).sum());
        }
        Ok((out, sol))
    }

    /// Unknowns of the reduced equations: `(p, mu1, mu2)` with a zero chain, else `(mu1, mu2)`.
    fn unpack(&self, z: &[f64]) -> (f64, f64, f64) {
        if self.has_chain() {
            (z[0], z[1], z[2])
        } else {
            (0.0, z[0], z[1])
        }
    }

    /// Jacobian of the reduced equations with respect to the unknowns at `z`.
    fn reduced_jacobian(
        &self,
        r1: f64,
        r2: f64,
        z: &[f64],
        g0: &[f64],
        warm: &[f64],
    ) -> Result<Matrix> {
        let n = z.len();
        let mut m = Matrix::zeros(n, n);
        let h = 1e-6;
        for c in 0..n {
            let mut zc = z.to_vec();
            zc[c] += h;
            let (p, mu1, mu2) = self.unpack(&zc);
            let (g, _) = self.reduced_gradient(r1, r2, p, mu1, mu2, Some(warm))?;
            for r in 0..n {
                m[(r, c)] = (g[r] - g0[r]) / h;
            }
        }
        Ok(m)
    }

    /// Linear model of the reduced equations at the origin and the
    /// solvability determinant of its `(mu1, mu2)` block.
    pub fn reduced_model(&self) -> Result<(Matrix, f64)> {
        let n = if self.has_chain() { 3 } else { 2 };
        let z = vec![0.0; n];
        let (g0, sol) = self.reduced_gradient(0.0, 0.0, 0.0, 0.0, 0.0, None)?;
        let m = self.reduced_jacobian(0.0, 0.0, &z, &g0, &sol.y)?;
        let o = n - 2;
        let det = m[(0, o)] * m[(1, o + 1)] - m[(0, o + 1)] * m[(1, o)];
        Ok((m, det))
    }

    /// Solves the reduced equations for `(p*, mu1*, mu2*)` at `(r1^2, r2^2)`.
    pub fn solve_reduced(&self, r1sq: f64, r2sq: f64) -> Result<ReducedSolution> {
        self.solve_reduced_from(r1sq, r2sq, None)
    }

    /// As [`solve_reduced`](Self::solve_reduced), starting from a previous solution.
    pub fn solve_reduced_from(
        &self,
        r1sq: f64,
        r2sq: f64,
        start: Option<&ReducedSolution>,
    ) -> Result<ReducedSolution> {
        if !(r1sq >= 0.0 && r2sq >= 0.0) || !r1sq.is_finite() || !r2sq.is_finite() {
            return Err(Error::Domain(
                "squared amplitudes must be finite and non-negative".into(),
            ));
        }
        let (model, det) = self.reduced_model()?;
        let scale = model.max_abs().max(1e-300);
        if abs(det) <= 1e-8 * scale * scale {
            return Err(Error::Degenerate(alloc::format!(
                "solvability determinant {det:e} vanishes: the collision is not transversal"
            )));
        }
        let (r1, r2) = (sqrt(r1sq), sqrt(r2sq));
        let n = model.rows;
        if r1 == 0.0 && r2 == 0.0 && start.is_none() {
            let u = LoopState::zeros(self.dim, self.n_modes());
            return Ok(ReducedSolution {
                p: 0.0,
                mu1: 0.0,
                mu2: 0.0,
                u,
                y: vec![0.0; self.embed.cols],
                residual: 0.0,
                iterations: 0,
            });
        }
        let mut z = match start {
            Some(s) if self.has_chain() => vec![s.p, s.mu1, s.mu2],
            Some(s) => vec![s.mu1, s.mu2],
            None => vec![0.0; n],
        };
        let mut warm: Option<Vec<f64>> = start.map(|s| s.y.clone());
        let mut lu_model = Some(Lu::new(&model)?).filter(|_| start.is_none());
        let mut residual = f64::INFINITY;
        for it in 0..=NEWTON_MAX_ITER {
            let (p, mu1, mu2) = self.unpack(&z);
            let (g, sol) = self.reduced_gradient(r1, r2, p, mu1, mu2, warm.as_deref())?;
            residual = g.iter().map(|x| abs(*x)).fold(0.0, f64::max);
            warm = Some(sol.y.clone());
            if residual <= 1e-11 || (it == NEWTON_MAX_ITER && residual <= 1e-10) {
                return Ok(ReducedSolution {
                    p,
                    mu1,
                    mu2,
                    u: sol.u,
                    y: sol.y,
                    residual,
                    iterations: it,
                });
            }
            if it == NEWTON_MAX_ITER || !residual.is_finite() {
                break;
            }
            // first step uses the quadratic model, then finite-difference Newton
            let step = match lu_model.take() {
                Some(lu) => lu.solve(&g),
                None => Lu::new(&self.reduced_jacobian(r1, r2, &z, &g, &sol.y)?)?.solve(&g),
            };
            z.iter_mut().zip(&step).for_each(|(a, b)| *a -= b);
        }
        if residual <= 1e-10 {
            let (p, mu1, mu2) = self.unpack(&z);
            let (_, sol) = self.reduced_gradient(r1, r2, p, mu1, mu2, warm.as_deref())?;
            return Ok(ReducedSolution {
                p,
                mu1,
                mu2,
                u: sol.u,
                y: sol.y,
                residual,
                iterations: NEWTON_MAX_ITER,
            });
        }
        Err(Error::NonConvergence {
            stage: "reduced equations",
            iterations: NEWTON_MAX_ITER,
            residual,
        })
    }

    /// Second-order coefficients of the reduced action by finite differences
    /// with one Richardson level.
    pub fn extract_coefficients(&self) -> Result<ReducedCoefficients> {
        let h = 1e-3;
        let s = |x1: f64, x2: f64, p: f64, mu1: f64, mu2: f64| {
            self.reduced_action_sq(x1, x2, p, mu1, mu2)
        };
        // forward in r^2, central in mu: O(h) error, removed by 2 D(h/2) - D(h)
        let mixed = |first: usize, second: usize| -> Result<(f64, f64)> {
            let d = |h: f64| -> Result<f64> {
                let mut a = [0.0; 5];
                let mut b = [0.0; 5];
                a[first] = h;
                b[first] = h;
                a[second] = h;
                b[second] = -h;
                Ok(
                    (s(a[0], a[1], a[2], a[3], a[4])? - s(b[0], b[1], b[2], b[3], b[4])?)
                        / (2.0 * h * h),
                )
            };
            let (dh, dh2) = (d(h)?, d(h / 2.0)?);
            let r = 2.0 * dh2 - dh;
            Ok((r, abs(r - dh2)))
        };
        let mut gaps = Vec::new();
        let mut take = |(v, g): (f64, f64)| {
            gaps.push(g);
            v
        };
        let s200_10 = take(mixed(0, 3)?);
        let s200_01 = take(mixed(0, 4)?);
        let s020_10 = take(mixed(1, 3)?);
        let s020_01 = take(mixed(1, 4)?);
        let (mut s002_00, mut s002_10) = (None, None);
        if self.has_chain() {
            let d0 = |h: f64| -> Result<f64> {
                Ok((s(0.0, 0.0, h, 0.0, 0.0)? + s(0.0, 0.0, -h, 0.0, 0.0)?) / (2.0 * h * h))
            };
            let (a, b) = (d0(h)?, d0(h / 2.0)?);
            let r = (4.0 * b - a) / 3.0;
            s002_00 = Some(take((r, abs(r - b))));
            let d1 = |h: f64| -> Result<f64> {
                let plus = s(0.0, 0.0, h, h, 0.0)? + s(0.0, 0.0, -h, h, 0.0)?;
                let minus = s(0.0, 0.0, h, -h, 0.0)? + s(0.0, 0.0, -h, -h, 0.0)?;
                Ok((plus - minus) / (4.0 * h * h * h))
            };
            let (a, b) = (d1(h)?, d1(h / 2.0)?);
            let r = (4.0 * b - a) / 3.0;
            s002_10 = Some(take((r, abs(r - b))));
        }
        let max_gap = gaps.iter().copied().fold(0.0, f64::max);
        if !(max_gap <= RICHARDSON_LIMIT) {
            return Err(Error::NonConvergence {
                stage: "coefficient extraction",
                iterations: 2,
                residual: max_gap,
            });
        }
        Ok(ReducedCoefficients {
            s002_00,
            s200_10,
            s020_10,
            s002_10,
            s200_01,
            s020_01,
            richardson_gap: max_gap,
        })
    }
}

/// Largest tolerated disagreement between the two Richardson levels.
pub const RICHARDSON_LIMIT: f64 = 1e-2;

/// Solution of the reduced equations at one amplitude pair.
#[derive(Debug, Clone)]
pub struct ReducedSolution {
    pub p: f64,
    pub mu1: f64,
    pub mu2: f64,
    /// Full loop `u_1 + h`.
    pub u: LoopState,
    pub y: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

/// Quadratic coefficients of the reduced action
/// `s~(r1^2, r2^2, p, mu1, mu2)`; `sabc_de` multiplies
/// `r1^a r2^b p^c mu1^d mu2^e`. The `p` coefficients exist only with a zero chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedCoefficients {
    pub s002_00: Option<f64>,
    pub s200_10: f64,
    pub s020_10: f64,
    pub s002_10: Option<f64>,
    pub s200_01: f64,
    pub s020_01: f64,
    /// Largest Richardson disagreement over all extracted values.
    pub richardson_gap: f64,
}

fn herm(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

fn norm2(v: &[f64]) -> f64 {
    sqrt(v.iter().map(|x| x * x).sum())
}

/// `(mode, component, imaginary)` of a real-layout index.
fn layout_index(d: usize, i: usize) -> (usize, usize, bool) {
    if i < d {
        (0, i, false)
    } else {
        let r = i - d;
        let k = r / (2 * d) + 1;
        let o = r % (2 * d);
        (k, o % d, o >= d)
    }
}
