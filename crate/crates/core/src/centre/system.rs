use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::hyperdual::HyperDual;
use crate::error::{Error, Result};
use crate::linalg::{cdot, Lu, Matrix};
use crate::math::{abs, sqrt};
use crate::Complex64;

/// A Hamiltonian `H(v, mu1)`. Only [`eval_hd`](Self::eval_hd) is required;
/// gradients and Hessians default to hyper-dual evaluation.
pub trait Hamiltonian: Send + Sync {
    fn dim(&self) -> usize;

    fn eval_hd(&self, x: &[HyperDual], mu1: HyperDual) -> HyperDual;

    fn value(&self, x: &[f64], mu1: f64) -> f64 {
        let xs: Vec<HyperDual> = x.iter().map(|&v| HyperDual::constant(v)).collect();
        self.eval_hd(&xs, HyperDual::constant(mu1)).re
    }

    fn gradient(&self, x: &[f64], mu1: f64, out: &mut [f64]) {
        let mut xs: Vec<HyperDual> = x.iter().map(|&v| HyperDual::constant(v)).collect();
        for i in 0..x.len() {
            xs[i].e1 = 1.0;
            out[i] = self.eval_hd(&xs, HyperDual::constant(mu1)).e1;
            xs[i].e1 = 0.0;
        }
    }

    fn hessian(&self, x: &[f64], mu1: f64, out: &mut Matrix) {
        let n = x.len();
        let mut xs: Vec<HyperDual> = x.iter().map(|&v| HyperDual::constant(v)).collect();
        for i in 0..n {
            for j in i..n {
                xs[i].e1 = 1.0;
                xs[j].e2 = 1.0;
                let h = self.eval_hd(&xs, HyperDual::constant(mu1)).e12;
                xs[i].e1 = 0.0;
                xs[j].e2 = 0.0;
                out[(i, j)] = h;
                out[(j, i)] = h;
            }
        }
    }

    /// `d/dmu1` of the Hessian.
    fn hessian_mu1(&self, x: &[f64], mu1: f64, out: &mut Matrix) {
        let h = 1e-5;
        let n = x.len();
        let mut a = Matrix::zeros(n, n);
        let mut b = Matrix::zeros(n, n);
        self.hessian(x, mu1 + h, &mut a);
        self.hessian(x, mu1 - h, &mut b);
        for k in 0..n * n {
            out.data[k] = (a.data[k] - b.data[k]) / (2.0 * h);
        }
    }
}

/// One monomial `coeff * mu1^mu_degree * prod x_i^exponents[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    pub exponents: Vec<u32>,
    pub coeff: f64,
    pub mu_degree: u32,
}

/// Polynomial Hamiltonian with analytic gradient and Hessian.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialHamiltonian {
    pub dim: usize,
    pub monomials: Vec<Monomial>,
}

impl PolynomialHamiltonian {
    pub fn new(dim: usize, monomials: Vec<Monomial>) -> Result<Self> {
        for m in &monomials {
            if m.exponents.len() != dim {
                return Err(Error::Configuration(format!(
                    "monomial has {} exponents, expected {dim}",
                    m.exponents.len()
                )));
            }
            if !m.coeff.is_finite() {
                return Err(Error::Configuration(
                    "monomial coefficient must be finite".into(),
                ));
            }
        }
        Ok(Self { dim, monomials })
    }

    /// `x^e`, its derivative factor `e x^(e-1)` and `e(e-1) x^(e-2)`.
    fn powers(x: f64, e: u32) -> (f64, f64, f64) {
        let p = |k: i64| {
            if k < 0 {
                0.0
            } else {
                crate::math::powi(x, k as i32)
            }
        };
        let e64 = e as i64;
        (
            p(e64),
            e as f64 * p(e64 - 1),
            (e as f64) * (e as f64 - 1.0) * p(e64 - 2),
        )
    }
}

impl Hamiltonian for PolynomialHamiltonian {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval_hd(&self, x: &[HyperDual], mu1: HyperDual) -> HyperDual {
        let mut acc = HyperDual::constant(0.0);
        for m in &self.monomials {
            let mut t = mu1.powi(m.mu_degree) * m.coeff;
            for (xi, &e) in x.iter().zip(&m.exponents) {
                if e > 0 {
                    t *= xi.powi(e);
                }
            }
            acc += t;
        }
        acc
    }

    fn value(&self, x: &[f64], mu1: f64) -> f64 {
        self.monomials
            .iter()
            .map(|m| {
                m.coeff
                    * crate::math::powi(mu1, m.mu_degree as i32)
                    * x.iter()
                        .zip(&m.exponents)
                        .map(|(v, &e)| crate::math::powi(*v, e as i32))
                        .product::<f64>()
            })
            .sum()
    }

    fn gradient(&self, x: &[f64], mu1: f64, out: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        let n = self.dim;
        let mut p = vec![(0.0, 0.0, 0.0); n];
        for m in &self.monomials {
            let c = m.coeff * crate::math::powi(mu1, m.mu_degree as i32);
            if c == 0.0 {
                continue;
            }
            for i in 0..n {
                p[i] = Self::powers(x[i], m.exponents[i]);
            }
            for i in 0..n {
                if m.exponents[i] == 0 {
                    continue;
                }
                let mut t = c * p[i].1;
                for (j, pj) in p.iter().enumerate() {
                    if j != i {
                        t *= pj.0;
                    }
                }
                out[i] += t;
            }
        }
    }

    fn hessian(&self, x: &[f64], mu1: f64, out: &mut Matrix) {
        out.data.iter_mut().for_each(|o| *o = 0.0);
        let n = self.dim;
        let mut p = vec![(0.0, 0.0, 0.0); n];
        for m in &self.monomials {
            let c = m.coeff * crate::math::powi(mu1, m.mu_degree as i32);
            if c == 0.0 {
                continue;
            }
            for i in 0..n {
                p[i] = Self::powers(x[i], m.exponents[i]);
            }
            for i in 0..n {
                if m.exponents[i] == 0 {
                    continue;
                }
                for j in i..n {
                    if m.exponents[j] == 0 {
                        continue;
                    }
                    let mut t = c;
                    for (l, pl) in p.iter().enumerate() {
                        t *= if l == i && l == j {
                            pl.2
                        } else if l == i || l == j {
                            pl.1
                        } else {
                            pl.0
                        };
                    }
                    out[(i, j)] += t;
                    if i != j {
                        out[(j, i)] += t;
                    }
                }
            }
        }
    }

    fn hessian_mu1(&self, x: &[f64], mu1: f64, out: &mut Matrix) {
        let d = PolynomialHamiltonian {
            dim: self.dim,
            monomials: self
                .monomials
                .iter()
                .filter(|m| m.mu_degree > 0)
                .map(|m| Monomial {
                    coeff: m.coeff * m.mu_degree as f64,
                    mu_degree: m.mu_degree - 1,
                    ..m.clone()
                })
                .collect(),
        };
        d.hessian(x, mu1, out);
    }
}

/// State-dependent structure callback `(v, mu1) -> J`.
pub type StructureFn = Box<dyn Fn(&[f64], f64) -> Matrix + Send + Sync>;
/// One-form callback `(v, mu1) -> alpha`.
pub type OneFormFn = Box<dyn Fn(&[f64], f64) -> Vec<f64> + Send + Sync>;

/// The skew operator `J` of the symplectic form `Omega(a, b) = <J a, b>`.
pub enum Structure {
    /// Constant `J`; the one-form is `alpha(v) = J v / 2`.
    Constant(Matrix),
    /// State-dependent `J` with its one-form `alpha`, `J = d alpha - d alpha^*`.
    Field { j: StructureFn, alpha: OneFormFn },
}

impl core::fmt::Debug for Structure {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Structure::Constant(m) => f.debug_tuple("Constant").field(m).finish(),
            Structure::Field { .. } => f.write_str("Field"),
        }
    }
}

impl Structure {
    pub fn matrix(&self, v: &[f64], mu1: f64) -> Matrix {
        match self {
            Structure::Constant(m) => m.clone(),
            Structure::Field { j, .. } => j(v, mu1),
        }
    }

    pub fn alpha(&self, v: &[f64], mu1: f64) -> Vec<f64> {
        match self {
            Structure::Constant(m) => {
                let mut out = vec![0.0; v.len()];
                m.mul_vec(v, &mut out);
                out.iter_mut().for_each(|o| *o *= 0.5);
                out
            }
            Structure::Field { alpha, .. } => alpha(v, mu1),
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Structure::Constant(_))
    }
}

/// Zero eigenvector `f1` and generalized eigenvector `f2` (`L f2 = f1`).
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroChain {
    pub f1: Vec<f64>,
    pub f2: Vec<f64>,
}

/// A finite-dimensional reversible Hamiltonian system
/// `v_t = J(v)^{-1} grad H(v)` with a semisimple collision at `+-i kappa`.
#[derive(Debug)]
pub struct HamiltonianSystem {
    pub name: String,
    pub hamiltonian: Box<dyn HamiltonianDebug>,
    pub structure: Structure,
    pub reverser: Matrix,
    pub kappa: f64,
    pub e1: Vec<Complex64>,
    pub e2: Vec<Complex64>,
    pub zero_chain: Option<ZeroChain>,
    /// `s_i` with `Omega(e_i, conj e_i) = i s_i`.
    pub signs: [i8; 2],
}

/// [`Hamiltonian`] with a `Debug` bound for use in trait objects.
pub trait HamiltonianDebug: Hamiltonian + core::fmt::Debug {}
impl<T: Hamiltonian + core::fmt::Debug> HamiltonianDebug for T {}

impl HamiltonianSystem {
    /// Builds a system, normalizing `e1`, `e2` so that
    /// `Omega(e_i, conj e_i) = +-i` and `f2` so that `Omega(f1, f2) = 1`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        hamiltonian: Box<dyn HamiltonianDebug>,
        structure: Structure,
        reverser: Matrix,
        kappa: f64,
        e1: Vec<Complex64>,
        e2: Vec<Complex64>,
        zero_chain: Option<ZeroChain>,
    ) -> Result<Self> {
        let d = hamiltonian.dim();
        if d == 0 || d % 2 != 0 {
            return Err(Error::Configuration(format!(
                "dimension must be even and positive, got {d}"
            )));
        }
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(Error::Configuration("kappa must be positive".into()));
        }
        if reverser.rows != d || reverser.cols != d || e1.len() != d || e2.len() != d {
            return Err(Error::Configuration(
                "dimensions of R, e1, e2 must match H".into(),
            ));
        }
        let j0 = structure.matrix(&vec![0.0; d], 0.0);
        if j0.rows != d || j0.cols != d {
            return Err(Error::Configuration("dimension of J must match H".into()));
        }
        let mut sys = Self {
            name: name.into(),
            hamiltonian,
            structure,
            reverser,
            kappa,
            e1,
            e2,
            zero_chain,
            signs: [0, 0],
        };
        let mut es = [sys.e1.clone(), sys.e2.clone()];
        for (i, e) in es.iter_mut().enumerate() {
            let w = sys.omega(e, &conj(e));
            if abs(w.im) <= 1e-12 {
                return Err(Error::Configuration(format!(
                    "Omega(e{}, conj e{}) vanishes",
                    i + 1,
                    i + 1
                )));
            }
            let f = 1.0 / sqrt(abs(w.im));
            e.iter_mut().for_each(|z| *z *= f);
            sys.signs[i] = if w.im > 0.0 { 1 } else { -1 };
        }
        [sys.e1, sys.e2] = es;
        if let Some(ch) = &sys.zero_chain {
            if ch.f1.len() != d || ch.f2.len() != d {
                return Err(Error::Configuration(
                    "dimensions of f1, f2 must match H".into(),
                ));
            }
            let w = sys.omega_real(&ch.f1, &ch.f2);
            if abs(w) <= 1e-12 {
                return Err(Error::Configuration("Omega(f1, f2) vanishes".into()));
            }
            let f2 = ch.f2.iter().map(|x| x / w).collect();
            sys.zero_chain = Some(ZeroChain {
                f1: ch.f1.clone(),
                f2,
            });
        }
        Ok(sys)
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.dim()
    }

    /// `J(0)` at `mu1 = 0`.
    pub fn j0(&self) -> Matrix {
        self.structure.matrix(&vec![0.0; self.dim()], 0.0)
    }

    /// Bilinear `Omega(a, b) = <J(0) a, b>` at `mu1 = 0`.
    pub fn omega(&self, a: &[Complex64], b: &[Complex64]) -> Complex64 {
        let j = self.j0();
        let mut ja = vec![Complex64::new(0.0, 0.0); a.len()];
        j.mul_cvec(a, &mut ja);
        ja.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    pub fn omega_real(&self, a: &[f64], b: &[f64]) -> f64 {
        let j = self.j0();
        let mut ja = vec![0.0; a.len()];
        j.mul_vec(a, &mut ja);
        ja.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    /// Linearization `L^{mu1} = J(0)^{-1} Hess H(0)`.
    pub fn linearization(&self, mu1: f64) -> Result<Matrix> {
        let d = self.dim();
        let zero = vec![0.0; d];
        let j = self.structure.matrix(&zero, mu1);
        let mut h = Matrix::zeros(d, d);
        self.hamiltonian.hessian(&zero, mu1, &mut h);
        let lu = Lu::new(&j).map_err(|_| Error::Configuration("J(0) is singular".into()))?;
        let mut out = Matrix::zeros(d, d);
        for c in 0..d {
            let col: Vec<f64> = (0..d).map(|r| h[(r, c)]).collect();
            let x = lu.solve(&col);
            for r in 0..d {
                out[(r, c)] = x[r];
            }
        }
        Ok(out)
    }

    /// `d/dmu1 L^{mu1}` at `mu1 = 0` (constant `J` only uses the Hessian).
    pub fn linearization_mu1(&self) -> Result<Matrix> {
        let d = self.dim();
        let h = 1e-5;
        let a = self.linearization(h)?;
        let b = self.linearization(-h)?;
        let mut out = Matrix::zeros(d, d);
        for k in 0..d * d {
            out.data[k] = (a.data[k] - b.data[k]) / (2.0 * h);
        }
        if self.structure.is_constant() {
            let mut dh = Matrix::zeros(d, d);
            self.hamiltonian.hessian_mu1(&vec![0.0; d], 0.0, &mut dh);
            let lu = Lu::new(&self.j0())?;
            for c in 0..d {
                let col: Vec<f64> = (0..d).map(|r| dh[(r, c)]).collect();
                let x = lu.solve(&col);
                for r in 0..d {
                    out[(r, c)] = x[r];
                }
            }
        }
        Ok(out)
    }

    /// Checks the structural hypotheses numerically.
    pub fn check_hypotheses(&self) -> Result<HypothesisReport> {
        let d = self.dim();
        let j = self.j0();
        let jt = j.transpose();
        let skew = (0..d * d)
            .map(|k| abs(j.data[k] + jt.data[k]))
            .fold(0.0, f64::max);
        let r = &self.reverser;
        let rr = r.mul(r);
        let involution = (0..d * d)
            .map(|k| abs(rr.data[k] - Matrix::identity(d).data[k]))
            .fold(0.0, f64::max);
        let l = self.linearization(0.0)?;
        let rl = r.mul(&l);
        let lr = l.mul(r);
        let anticommutation = (0..d * d)
            .map(|k| abs(rl.data[k] + lr.data[k]))
            .fold(0.0, f64::max);
        let rjr = r.transpose().mul(&j).mul(r);
        let antisymplectic = (0..d * d)
            .map(|k| abs(rjr.data[k] + j.data[k]))
            .fold(0.0, f64::max);

        let mut h_symmetry: f64 = 0.0;
        let mut rng = 0x9e37_79b9_7f4a_7c15u64;
        for _ in 0..16 {
            let v: Vec<f64> = (0..d).map(|_| 0.5 * uniform(&mut rng)).collect();
            let mut rv = vec![0.0; d];
            r.mul_vec(&v, &mut rv);
            for mu in [0.0, 0.1] {
                h_symmetry = h_symmetry.max(abs(
                    self.hamiltonian.value(&v, mu) - self.hamiltonian.value(&rv, mu)
                ));
            }
        }

        let i = Complex64::new(0.0, 1.0);
        let mut eigen: f64 = 0.0;
        let mut conjugation: f64 = 0.0;
        for e in [&self.e1, &self.e2] {
            let mut le = vec![Complex64::new(0.0, 0.0); d];
            l.mul_cvec(e, &mut le);
            eigen = eigen.max(
                le.iter()
                    .zip(e.iter())
                    .map(|(a, b)| (a - i * self.kappa * b).norm())
                    .fold(0.0, f64::max),
            );
            let mut re = vec![Complex64::new(0.0, 0.0); d];
            r.mul_cvec(e, &mut re);
            conjugation = conjugation.max(
                re.iter()
                    .zip(e.iter())
                    .map(|(a, b)| (a - b.conj()).norm())
                    .fold(0.0, f64::max),
            );
        }
        let cross = self
            .omega(&self.e1, &self.e2)
            .norm()
            .max(self.omega(&self.e1, &conj(&self.e2)).norm());
        let independence = {
            let g11 = cdot(&self.e1, &self.e1).norm();
            let g22 = cdot(&self.e2, &self.e2).norm();
            let g12 = cdot(&self.e1, &self.e2).norm();
            g11 * g22 - g12 * g12
        };

        let (chain, cyclic) = match &self.zero_chain {
            None => (0.0, 0.0),
            Some(ch) => {
                let mut lf1 = vec![0.0; d];
                let mut lf2 = vec![0.0; d];
                l.mul_vec(&ch.f1, &mut lf1);
                l.mul_vec(&ch.f2, &mut lf2);
                let mut res = lf1.iter().map(|x| abs(*x)).fold(0.0, f64::max);
                res = res.max(
                    lf2.iter()
                        .zip(&ch.f1)
                        .map(|(a, b)| abs(a - b))
                        .fold(0.0, f64::max),
                );
                let mut rf1 = vec![0.0; d];
                let mut rf2 = vec![0.0; d];
                r.mul_vec(&ch.f1, &mut rf1);
                r.mul_vec(&ch.f2, &mut rf2);
                res = res.max(
                    rf1.iter()
                        .zip(&ch.f1)
                        .map(|(a, b)| abs(a + b))
                        .fold(0.0, f64::max),
                );
                res = res.max(
                    rf2.iter()
                        .zip(&ch.f2)
                        .map(|(a, b)| abs(a - b))
                        .fold(0.0, f64::max),
                );
                let mut cyc: f64 = 0.0;
                for _ in 0..16 {
                    let v: Vec<f64> = (0..d).map(|_| 0.5 * uniform(&mut rng)).collect();
                    let q = 0.7 * uniform(&mut rng);
                    let w: Vec<f64> = v.iter().zip(&ch.f1).map(|(a, b)| a + q * b).collect();
                    cyc = cyc.max(abs(
                        self.hamiltonian.value(&v, 0.05) - self.hamiltonian.value(&w, 0.05)
                    ));
                    if let Structure::Field { j, .. } = &self.structure {
                        let (a, b) = (j(&v, 0.05), j(&w, 0.05));
                        cyc = cyc.max(
                            (0..d * d)
                                .map(|k| abs(a.data[k] - b.data[k]))
                                .fold(0.0, f64::max),
                        );
                    }
                }
                (res, cyc)
            }
        };
        Ok(HypothesisReport {
            skew,
            involution,
            anticommutation,
            antisymplectic,
            h_symmetry,
            eigen,
            conjugation,
            cross_pairing: cross,
            independence,
            chain,
            cyclic,
        })
    }
}

/// Residuals of the structural hypotheses; all should vanish up to
/// rounding, except `independence`, which must be positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypothesisReport {
    pub skew: f64,
    pub involution: f64,
    pub anticommutation: f64,
    pub antisymplectic: f64,
    pub h_symmetry: f64,
    pub eigen: f64,
    pub conjugation: f64,
    pub cross_pairing: f64,
    pub independence: f64,
    pub chain: f64,
    pub cyclic: f64,
}

impl HypothesisReport {
    pub fn max_residual(&self) -> f64 {
        [
            self.skew,
            self.involution,
            self.anticommutation,
            self.antisymplectic,
            self.h_symmetry,
            self.eigen,
            self.conjugation,
            self.cross_pairing,
            self.chain,
            self.cyclic,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.max_residual() <= tol && self.independence > tol
    }
}

pub(crate) fn conj(v: &[Complex64]) -> Vec<Complex64> {
    v.iter().map(|z| z.conj()).collect()
}

/// Deterministic uniform sample in `[-1, 1)` (splitmix64).
pub(crate) fn uniform(state: &mut u64) -> f64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    2.0 * ((z >> 11) as f64 / (1u64 << 53) as f64) - 1.0
}

/// Builtin test systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TestSystemKind {
    /// Two oscillators with frequencies `kappa +- mu1/2`, both positive
    /// definite (1:1 resonance), coupled by `c q1^2 q2^2`.
    Basic4d,
    /// As [`Basic4d`](Self::Basic4d) with the second oscillator negative
    /// definite (1:-1 resonance).
    Basic4dOpposite,
    /// [`Basic4d`](Self::Basic4d) plus a pair `(q3, p3)` entering only
    /// through `p3^2/2 + p3 q1^2`, so zero is a double eigenvalue.
    Translation6d,
}

impl TestSystemKind {
    pub fn name(&self) -> &'static str {
        match self {
            TestSystemKind::Basic4d => "BASIC_4D",
            TestSystemKind::Basic4dOpposite => "BASIC_4D_OPPOSITE",
            TestSystemKind::Translation6d => "TRANSLATION_6D",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "BASIC_4D" => Some(TestSystemKind::Basic4d),
            "BASIC_4D_OPPOSITE" => Some(TestSystemKind::Basic4dOpposite),
            "TRANSLATION_6D" => Some(TestSystemKind::Translation6d),
            _ => None,
        }
    }

    /// Analytic `d kappa_i / d mu1` at `mu1 = 0`.
    pub fn kappa_slopes(&self) -> [f64; 2] {
        [0.5, -0.5]
    }
}

fn mono(dim: usize, pairs: &[(usize, u32)], coeff: f64, mu_degree: u32) -> Monomial {
    let mut exponents = vec![0; dim];
    for &(i, e) in pairs {
        exponents[i] = e;
    }
    Monomial {
        exponents,
        coeff,
        mu_degree,
    }
}

/// Canonical `J = [[0, -I], [I, 0]]`, so that `J^{-1} grad H = (H_p, -H_q)`.
pub fn canonical_structure(n: usize) -> Matrix {
    let mut j = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = -1.0;
        j[(n + i, i)] = 1.0;
    }
    j
}

/// Builds one of the builtin systems with frequency `kappa` and quartic
/// coupling constant `coupling`.
pub fn make_test_system(
    kind: TestSystemKind,
    kappa: f64,
    coupling: f64,
) -> Result<HamiltonianSystem> {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let (n, second) = match kind {
        TestSystemKind::Basic4d => (2, 1.0),
        TestSystemKind::Basic4dOpposite => (2, -1.0),
        TestSystemKind::Translation6d => (3, 1.0),
    };
    let d = 2 * n;
    let (q1, q2, p1, p2) = (0, 1, n, n + 1);
    let mut ms = vec![
        mono(d, &[(q1, 2)], 0.5 * kappa, 0),
        mono(d, &[(p1, 2)], 0.5 * kappa, 0),
        mono(d, &[(q1, 2)], 0.25, 1),
        mono(d, &[(p1, 2)], 0.25, 1),
        mono(d, &[(q2, 2)], 0.5 * kappa * second, 0),
        mono(d, &[(p2, 2)], 0.5 * kappa * second, 0),
        mono(d, &[(q2, 2)], -0.25 * second, 1),
        mono(d, &[(p2, 2)], -0.25 * second, 1),
        mono(d, &[(q1, 2), (q2, 2)], coupling, 0),
    ];
    let mut rdiag = vec![1.0; d];
    for r in rdiag.iter_mut().skip(n) {
        *r = -1.0;
    }
    let mut e1 = vec![z; d];
    e1[q1] = one;
    e1[p1] = i;
    let mut e2 = vec![z; d];
    e2[q2] = one;
    e2[p2] = i * second;
    let mut chain = None;
    if kind == TestSystemKind::Translation6d {
        let (q3, p3) = (2, 5);
        ms.push(mono(d, &[(p3, 2)], 0.5, 0));
        ms.push(mono(d, &[(p3, 1), (q1, 2)], 1.0, 0));
        rdiag[q3] = -1.0;
        rdiag[p3] = 1.0;
        let mut f1 = vec![0.0; d];
        f1[q3] = 1.0;
        let mut f2 = vec![0.0; d];
        f2[p3] = 1.0;
        chain = Some(ZeroChain { f1, f2 });
    }
    let mut r = Matrix::zeros(d, d);
    for (k, v) in rdiag.iter().enumerate() {
        r[(k, k)] = *v;
    }
    HamiltonianSystem::new(
        kind.name(),
        Box::new(PolynomialHamiltonian::new(d, ms)?),
        Structure::Constant(canonical_structure(n)),
        r,
        kappa,
        e1,
        e2,
        chain,
    )
}
