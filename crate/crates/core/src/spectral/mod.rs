//! Closed-form eigenvectors, generalized eigenvectors and the mode-0 Jordan
//! chain of the linearized spatial-dynamics operator `L`, with an explicit
//! mode-wise application of `L` used to verify them.
//!
//! A function of mode `k` is `f(y) e^{i k z}` with state
//! `(eta, rho, Gamma, zeta, xi, Psi)`; `eta, rho, zeta, xi` are complex
//! scalars and `Gamma, Psi` are profiles in the depth variable `y`.

mod grid;
mod profile;

pub use grid::{cheb_matrix, clenshaw_curtis, lobatto, GridMap, YGrid, DEFAULT_POINTS};
pub use profile::{Profile, Term};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::dispersion::FluidParams;
use crate::error::{domain, precondition, Error, Result};
use crate::math::{abs, exp, sin, sqrt, PI};
use crate::resonance::{a_k, b_k, detect_jordan, mode_function, sigma_sq, WaveGeometry};
use crate::Complex64;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Scalars attached to a mode-`k` eigenvalue `i s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeQuantities {
    pub sigma_k: f64,
    pub a_k: f64,
    pub b_k: f64,
    pub t_k: f64,
    pub c_k: f64,
}

pub fn mode_quantities(
    k: i64,
    s: f64,
    params: &FluidParams,
    geom: &WaveGeometry,
) -> Result<ModeQuantities> {
    params.validate()?;
    geom.validate()?;
    let sig2 = sigma_sq(k, s, geom);
    if !(sig2 > 0.0) {
        return Err(Error::Degenerate("sigma_k vanishes".into()));
    }
    let sigma = sqrt(sig2);
    Ok(ModeQuantities {
        sigma_k: sigma,
        a_k: a_k(k, s, geom),
        b_k: b_k(k, s, geom),
        t_k: params.depth_factor(sigma),
        c_k: params.cosech_factor(sigma),
    })
}

/// A single Fourier mode of the state.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenFunction {
    pub k: i64,
    pub eta: Complex64,
    pub rho: Complex64,
    pub gamma: Profile,
    pub zeta: Complex64,
    pub xi: Complex64,
    pub psi: Profile,
}

impl EigenFunction {
    pub fn zero(k: i64) -> Self {
        Self {
            k,
            eta: ZERO,
            rho: ZERO,
            gamma: Profile::zero(),
            zeta: ZERO,
            xi: ZERO,
            psi: Profile::zero(),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.gamma.is_closed() && self.psi.is_closed()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            k: self.k,
            eta: self.eta * c,
            rho: self.rho * c,
            gamma: self.gamma.scale(c),
            zeta: self.zeta * c,
            xi: self.xi * c,
            psi: self.psi.scale(c),
        }
    }

    /// `a * self + b * other`; both must have the same mode.
    pub fn combine(&self, a: Complex64, other: &Self, b: Complex64) -> Result<Self> {
        if self.k != other.k {
            return Err(precondition(format!(
                "modes {} and {} cannot be combined",
                self.k, other.k
            )));
        }
        Ok(Self {
            k: self.k,
            eta: self.eta * a + other.eta * b,
            rho: self.rho * a + other.rho * b,
            gamma: self.gamma.combine(a, &other.gamma, b),
            zeta: self.zeta * a + other.zeta * b,
            xi: self.xi * a + other.xi * b,
            psi: self.psi.combine(a, &other.psi, b),
        })
    }

    /// Complex conjugate of `f e^{ikz}`, a function of mode `-k`.
    pub fn conj(&self) -> Self {
        Self {
            k: -self.k,
            eta: self.eta.conj(),
            rho: self.rho.conj(),
            gamma: self.gamma.conj(),
            zeta: self.zeta.conj(),
            xi: self.xi.conj(),
            psi: self.psi.conj(),
        }
    }

    /// Replaces closed-form profiles by their samples on `grid`.
    pub fn to_sampled(&self, grid: &YGrid) -> Self {
        Self {
            gamma: self.gamma.to_sampled(grid),
            psi: self.psi.to_sampled(grid),
            ..self.clone()
        }
    }

    /// Maximum modulus over the scalars and the profile samples on `grid`.
    pub fn grid_norm(&self, grid: &YGrid) -> f64 {
        let mut m = [self.eta, self.rho, self.zeta, self.xi]
            .iter()
            .fold(0.0f64, |m, z| m.max(z.norm()));
        for p in [&self.gamma, &self.psi] {
            for (j, _) in grid.finite_points() {
                m = m.max(p.sample(grid)[j].norm());
            }
        }
        m
    }

    /// Residuals of the two boundary conditions in the domain of `L`: the
    /// bottom condition `Gamma_y(-1/beta) = 0` (decay for infinite depth)
    /// and the surface condition
    /// `Gamma_y(0) + gamma (rho sin t2 + i k nu0 eta sin t1) = 0`.
    pub fn boundary_residuals(&self, params: &FluidParams, geom: &WaveGeometry) -> (f64, f64) {
        let dg = self.gamma.derivative();
        let bottom = if params.is_deep() {
            match &self.gamma {
                Profile::Closed(ts) => {
                    if ts.iter().all(|t| t.coeff.norm() == 0.0 || t.rate > 0.0) {
                        0.0
                    } else {
                        f64::INFINITY
                    }
                }
                Profile::Sampled { .. } => 0.0,
            }
        } else {
            dg.value_at(-1.0 / params.beta)
                .map_or(f64::NAN, |v| v.norm())
        };
        let top = dg.surface()
            + (self.rho * sin(geom.theta2)
                + I * (self.k as f64 * geom.nu0 * sin(geom.theta1)) * self.eta)
                * params.gamma;
        (bottom, top.norm())
    }
}

fn exp_pair(params: &FluidParams, sigma: f64) -> (f64, f64, f64) {
    // (sech(sigma/beta), c e^{sigma/beta}, anchor of the decaying term)
    if params.is_deep() {
        return (0.0, 0.0, 0.0);
    }
    let x = sigma / params.beta;
    let sech = 2.0 / (exp(x) + exp(-x));
    let c_shift = 4.0 * x / (exp(x) - exp(-3.0 * x));
    (
        sech,
        if c_shift.is_finite() { c_shift } else { 0.0 },
        -1.0 / params.beta,
    )
}

/// `cosh(sigma y) + t sinh(sigma y)` as closed-form terms, scaled by `c`.
fn gamma_profile(params: &FluidParams, q: &ModeQuantities, c: Complex64) -> Profile {
    let (sech, _, anchor) = exp_pair(params, q.sigma_k);
    let mut ts = vec![Term::new(c * (0.5 * (1.0 + q.t_k)), 0, q.sigma_k, 0.0)];
    if sech != 0.0 {
        ts.push(Term::new(c * (0.5 * sech), 0, -q.sigma_k, anchor));
    }
    Profile::Closed(ts)
}

fn check_eigenvalue(k: i64, s: f64, params: &FluidParams, geom: &WaveGeometry) -> Result<()> {
    let r = mode_function(k, s, params, geom);
    let sig = sqrt(sigma_sq(k, s, geom).max(0.0));
    let scale = params.radial(sig).max(1e-300);
    if abs(r) > 1e-8 * scale {
        return Err(precondition(format!(
            "i*{s} is not a mode {k} eigenvalue (relative residual {:e})",
            abs(r) / scale
        )));
    }
    Ok(())
}

/// Closed-form eigenvector for the eigenvalue `i s` of mode `k`.
pub fn eigenvector(
    k: i64,
    s: f64,
    params: &FluidParams,
    geom: &WaveGeometry,
) -> Result<EigenFunction> {
    let q = mode_quantities(k, s, params, geom)?;
    check_eigenvalue(k, s, params, geom)?;
    let g = params.gamma;
    let sig2 = q.sigma_k * q.sigma_k;
    let den = 1.0 + sig2 * sig2;
    let a2k = a_k(2 * k, s, geom);
    Ok(EigenFunction {
        k,
        eta: I * (g * q.b_k / den),
        rho: re(-s * g * q.b_k / den),
        gamma: gamma_profile(params, &q, ONE),
        zeta: re(g * sin(geom.theta2) - g * sig2 * a2k * q.b_k / den),
        xi: I * (-g * sig2 * q.b_k / den),
        psi: gamma_profile(params, &q, I * q.a_k),
    })
}

/// Phase-fixed eigenvector `i v` satisfying `R e = conj(e)`.
pub fn reversible_eigenvector(
    k: i64,
    s: f64,
    params: &FluidParams,
    geom: &WaveGeometry,
) -> Result<EigenFunction> {
    Ok(eigenvector(k, s, params, geom)?.scale(I))
}

/// Generalized eigenvector `w` with `(L - i s) w = v` on the Jordan locus.
pub fn generalized_eigenvector(
    k: i64,
    s: f64,
    params: &FluidParams,
    geom: &WaveGeometry,
) -> Result<EigenFunction> {
    let q = mode_quantities(k, s, params, geom)?;
    check_eigenvalue(k, s, params, geom)?;
    let info = detect_jordan(k, s, params, geom)?;
    if !info.chain_length_at_least_2
        || info.mechanism == crate::resonance::JordanMechanism::DegenerateB
    {
        return Err(precondition(format!(
            "no Jordan chain is available at (k, s) = ({k}, {s})"
        )));
    }
    let g = params.gamma;
    let st2 = sin(geom.theta2);
    let (sig, a, b, t, c) = (q.sigma_k, q.a_k, q.b_k, q.t_k, q.c_k);
    let sig2 = sig * sig;
    let den = 1.0 + sig2 * sig2;
    let a2k = a_k(2 * k, s, geom);
    let k1 = 2.0 * sig2 / (den * den) + c / (2.0 * sig2 * den);
    let k2 = 2.0 * sig2 * sig2 / (den * den) + (c - 2.0) / (2.0 * den);

    let eta = re(g * st2 / den - 2.0 * g * a * b * k1);
    let rho = I * (g * b / den + s * g * st2 / den - 2.0 * g * s * a * b * k1);
    let zeta = I
        * ((c * a / sig2 + sig2 * a2k / den) * g * st2 + g * sig2 * b / den
            - 2.0 * g * a * a2k * b * k2);
    let xi = re(-sig2 / den * g * st2 + 2.0 * g * a * b * k2);

    let (sech, c_shift, anchor) = exp_pair(params, sig);
    let mut gt = vec![
        Term::new(I * (-a * (1.0 + t) / (2.0 * sig)), 1, sig, 0.0),
        Term::new(I * (c * a / (2.0 * sig2)), 0, sig, 0.0),
    ];
    let mut pt = vec![
        Term::new(re(0.5 * (1.0 + t) - c * a * a / (2.0 * sig2)), 0, sig, 0.0),
        Term::new(re((1.0 + t) * a * a / (2.0 * sig)), 1, sig, 0.0),
    ];
    if !params.is_deep() {
        gt.push(Term::new(I * (a * sech / (2.0 * sig)), 1, -sig, anchor));
        gt.push(Term::new(I * (a * c_shift / (2.0 * sig2)), 0, -sig, anchor));
        pt.push(Term::new(
            re(0.5 * sech - c_shift * a * a / (2.0 * sig2)),
            0,
            -sig,
            anchor,
        ));
        pt.push(Term::new(re(-sech * a * a / (2.0 * sig)), 1, -sig, anchor));
    }
    Ok(EigenFunction {
        k,
        eta,
        rho,
        gamma: Profile::Closed(gt),
        zeta,
        xi,
        psi: Profile::Closed(pt),
    })
}

/// Generalized eigenvectors of the zero eigenvalue in mode 0:
/// `f1, f2`, and `f3, f4` when `gamma^{-2} = beta sin^2(theta2)`.
pub fn mode0_chain(params: &FluidParams, geom: &WaveGeometry) -> Result<Vec<EigenFunction>> {
    params.validate()?;
    geom.validate()?;
    if params.is_deep() {
        return Err(Error::Degenerate(
            "infinite depth: L has essential spectrum at the origin".into(),
        ));
    }
    let gs = params.gamma * sin(geom.theta2);
    let quad = Profile::Closed(vec![Term::poly(-0.5, 2), Term::poly(-1.0 / params.beta, 1)]);
    let mut chain = vec![
        EigenFunction {
            gamma: Profile::Closed(vec![Term::poly(1.0, 0)]),
            zeta: re(gs),
            ..EigenFunction::zero(0)
        },
        EigenFunction {
            eta: re(gs),
            psi: Profile::Closed(vec![Term::poly(1.0, 0)]),
            ..EigenFunction::zero(0)
        },
    ];
    let inv = 1.0 / (params.gamma * params.gamma);
    let st = sin(geom.theta2);
    if abs(inv - params.beta * st * st) <= crate::dispersion::BOUNDARY_TOL * inv {
        chain.push(EigenFunction {
            rho: re(gs),
            gamma: quad.clone(),
            ..EigenFunction::zero(0)
        });
        chain.push(EigenFunction {
            xi: re(gs),
            psi: quad,
            ..EigenFunction::zero(0)
        });
    }
    Ok(chain)
}

/// Applies `L` to a mode-`k` function (`d/dz` acts as `i k`). Closed-form
/// profiles give closed-form output; sampled profiles use Chebyshev
/// differentiation on their grid.
pub fn apply_l_mode(
    k: i64,
    f: &EigenFunction,
    params: &FluidParams,
    geom: &WaveGeometry,
) -> Result<EigenFunction> {
    params.validate()?;
    geom.validate()?;
    if f.k != k {
        return Err(precondition(format!("function has mode {}, not {k}", f.k)));
    }
    let kf = k as f64;
    let nu = geom.nu0;
    let c = geom.cos_diff();
    let sd = geom.sin_diff();
    let ikc = I * (nu * kf * c);
    let g0 = f.gamma.surface();
    let gyy = f.gamma.derivative().derivative();
    Ok(EigenFunction {
        k,
        eta: f.rho,
        rho: f.xi + f.eta * (nu * nu * kf * kf) - f.rho * ikc * 2.0,
        gamma: f.psi.combine(ONE, &f.gamma, -ikc),
        zeta: -f.xi * (nu * nu * kf * kf) + f.eta
            - I * (params.gamma * nu * kf * sin(geom.theta1)) * g0,
        xi: -f.zeta + g0 * (params.gamma * sin(geom.theta2)) - f.xi * ikc * 2.0,
        psi: gyy
            .combine(-ONE, &f.gamma, re(nu * nu * sd * sd * kf * kf))
            .combine(ONE, &f.psi, -ikc),
    })
}

/// The reverser `R`: `f(z) -> (eta, -rho, -Gamma, -zeta, xi, Psi)(-z)`,
/// mapping mode `k` to mode `-k`.
pub fn reverser(f: &EigenFunction) -> EigenFunction {
    EigenFunction {
        k: -f.k,
        eta: f.eta,
        rho: -f.rho,
        gamma: f.gamma.scale(-ONE),
        zeta: -f.zeta,
        xi: f.xi,
        psi: f.psi.clone(),
    }
}

/// `||L f - lambda f|| / ||f||` in the grid norm.
pub fn eigen_residual(
    f: &EigenFunction,
    lambda: Complex64,
    params: &FluidParams,
    geom: &WaveGeometry,
    grid: &YGrid,
) -> Result<f64> {
    let lf = apply_l_mode(f.k, f, params, geom)?;
    let r = lf.combine(ONE, f, -lambda)?;
    Ok(r.grid_norm(grid) / f.grid_norm(grid).max(1e-300))
}

/// `||L w - lambda w - v|| / ||w||` in the grid norm.
pub fn chain_residual(
    w: &EigenFunction,
    v: &EigenFunction,
    lambda: Complex64,
    params: &FluidParams,
    geom: &WaveGeometry,
    grid: &YGrid,
) -> Result<f64> {
    let lw = apply_l_mode(w.k, w, params, geom)?;
    let r = lw.combine(ONE, w, -lambda)?.combine(ONE, v, -ONE)?;
    Ok(r.grid_norm(grid) / w.grid_norm(grid).max(1e-300))
}

/// Bilinear symplectic pairing over one period in `z`,
/// `2 pi [zeta_g eta_f - eta_g zeta_f + xi_g rho_f - rho_g xi_f
/// + integral (Psi_g Gamma_f - Gamma_g Psi_f) dy]`, nonzero only when the
/// modes sum to zero. The `y`-integral uses the quadrature of `grid`.
pub fn symplectic_pair_on(f: &EigenFunction, g: &EigenFunction, grid: &YGrid) -> Complex64 {
    if f.k + g.k != 0 {
        return ZERO;
    }
    let gf = f.gamma.sample(grid);
    let pf = f.psi.sample(grid);
    let gg = g.gamma.sample(grid);
    let pg = g.psi.sample(grid);
    let mut integral = ZERO;
    for (j, _) in grid.finite_points() {
        if grid.w[j] != 0.0 {
            integral += (pg[j] * gf[j] - gg[j] * pf[j]) * grid.w[j];
        }
    }
    (g.zeta * f.eta - g.eta * f.zeta + g.xi * f.rho - g.rho * f.xi + integral) * (2.0 * PI)
}

/// [`symplectic_pair_on`] with the default grid for `params`.
pub fn symplectic_pair(
    f: &EigenFunction,
    g: &EigenFunction,
    params: &FluidParams,
) -> Result<Complex64> {
    let grid = YGrid::for_params(params, DEFAULT_POINTS)?;
    Ok(symplectic_pair_on(f, g, &grid))
}

/// Scales `e` so that `Omega(e, conj e) = s i` with `s = +-1`, returning the
/// scaled function and `s`.
pub fn normalize_eigenvector(
    e: &EigenFunction,
    params: &FluidParams,
) -> Result<(EigenFunction, i8)> {
    let w = symplectic_pair(e, &e.conj(), params)?;
    if !(abs(w.im) > 1e-14 * (1.0 + abs(w.re))) {
        return Err(Error::Degenerate("Omega(e, conj e) vanishes".into()));
    }
    let sign = if w.im > 0.0 { 1 } else { -1 };
    Ok((e.scale(re(1.0 / sqrt(abs(w.im)))), sign))
}

/// Scales the zero chain so that `Omega(f1, f2) = 1`.
pub fn normalize_chain(
    chain: &[EigenFunction],
    params: &FluidParams,
) -> Result<Vec<EigenFunction>> {
    if chain.len() < 2 {
        return Err(domain("a chain needs at least two vectors"));
    }
    let w = symplectic_pair(&chain[0], &chain[1], params)?;
    if w.norm() <= 1e-14 {
        return Err(Error::Degenerate("Omega(f1, f2) vanishes".into()));
    }
    let fac = ONE / w;
    let mut out = chain.to_vec();
    out[1] = chain[1].scale(fac);
    for f in out.iter_mut().skip(2) {
        *f = f.scale(fac);
    }
    Ok(out)
}

/// The closed-form value `2 pi (1/beta - gamma^2 sin^2 theta2)` of
/// `Omega(f1, f2)`.
pub fn mode0_pairing(params: &FluidParams, geom: &WaveGeometry) -> f64 {
    let gs = params.gamma * sin(geom.theta2);
    2.0 * PI * (1.0 / params.beta - gs * gs)
}
