//! Imaginary spectrum of the spatial-dynamics operator through the geometry
//! of the lines
//!
//! `S_k = { (s sin t2 + k nu0 sin t1, -s cos t2 - k nu0 cos t1) : s real }`
//!
//! and their intersections with the dispersion curve: `i s` is a mode-`k`
//! eigenvalue exactly when `S_k(s)` lies on the curve.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::dispersion::{axis_roots, FluidParams, DEFAULT_A_MAX};
use crate::error::{domain, precondition, Error, Result};
use crate::math::{abs, acos_clamped, atan2, cos, sin, sqrt, PI};
use crate::roots::{bisect, lin_grid, sign_change_brackets};

/// Sample points per mode in eigenvalue scans.
pub const SCAN_POINTS: usize = 2048;
/// Relative tolerance of the tangency tests.
pub const TANGENCY_TOL: f64 = 1e-8;

/// Angles of the periodicity directions and the lattice spacing `nu0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveGeometry {
    pub theta1: f64,
    pub theta2: f64,
    pub nu0: f64,
}

impl WaveGeometry {
    pub fn new(theta1: f64, theta2: f64, nu0: f64) -> Result<Self> {
        let g = Self {
            theta1,
            theta2,
            nu0,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.theta1.is_finite() || !self.theta2.is_finite() || !self.nu0.is_finite() {
            return Err(domain("geometry must be finite"));
        }
        if self.nu0 <= 0.0 {
            return Err(domain(format!("nu0 must be > 0, got {}", self.nu0)));
        }
        if abs(sin(self.theta1 - self.theta2)) < 1e-12 {
            return Err(domain("theta1 and theta2 must define different directions"));
        }
        Ok(())
    }

    /// `cos(theta1 - theta2)`.
    pub fn cos_diff(&self) -> f64 {
        cos(self.theta1 - self.theta2)
    }

    /// `sin(theta1 - theta2)`.
    pub fn sin_diff(&self) -> f64 {
        sin(self.theta1 - self.theta2)
    }
}

/// Point of `S_k` with coordinate `s`.
pub fn line_sk(k: i64, s: f64, geom: &WaveGeometry) -> (f64, f64) {
    let kn = k as f64 * geom.nu0;
    (
        s * sin(geom.theta2) + kn * sin(geom.theta1),
        -s * cos(geom.theta2) - kn * cos(geom.theta1),
    )
}

/// `sigma_k^2 = s^2 + 2 k nu0 s cos(theta1 - theta2) + k^2 nu0^2`.
pub fn sigma_sq(k: i64, s: f64, geom: &WaveGeometry) -> f64 {
    let kn = k as f64 * geom.nu0;
    s * s + 2.0 * kn * s * geom.cos_diff() + kn * kn
}

/// `b_k = k nu0 sin(theta1) + s sin(theta2)`.
pub fn b_k(k: i64, s: f64, geom: &WaveGeometry) -> f64 {
    k as f64 * geom.nu0 * sin(geom.theta1) + s * sin(geom.theta2)
}

/// `a_k = s + k nu0 cos(theta1 - theta2)`.
pub fn a_k(k: i64, s: f64, geom: &WaveGeometry) -> f64 {
    s + k as f64 * geom.nu0 * geom.cos_diff()
}

/// The eigenvalue function in dispersion form,
/// `(1 + sigma^4) sigma tanh(sigma / beta) - gamma^2 b_k^2`.
pub fn mode_function(k: i64, s: f64, params: &FluidParams, geom: &WaveGeometry) -> f64 {
    let sigma = sqrt(sigma_sq(k, s, geom).max(0.0));
    let b = b_k(k, s, geom);
    params.radial(sigma) - params.gamma * params.gamma * b * b
}

/// Derivative of [`mode_function`] in `s`.
pub fn mode_function_ds(k: i64, s: f64, params: &FluidParams, geom: &WaveGeometry) -> f64 {
    let sigma = sqrt(sigma_sq(k, s, geom).max(0.0));
    let (r1, _) = params.radial_derivatives(sigma);
    r1 * a_k(k, s, geom) / sigma
        - 2.0 * params.gamma * params.gamma * b_k(k, s, geom) * sin(geom.theta2)
}

/// How a Jordan chain of length at least two arises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum JordanMechanism {
    /// `(beta, gamma)` lies on the tangency curve `C_k`.
    CurveCk,
    /// The degenerate case with vanishing denominator (`theta2 = 0`).
    DegenerateB,
    /// Infinite depth tangency condition.
    DeepwaterC,
    None,
}

impl JordanMechanism {
    pub fn name(&self) -> &'static str {
        match self {
            JordanMechanism::CurveCk => "CURVE_CK",
            JordanMechanism::DegenerateB => "DEGENERATE_B",
            JordanMechanism::DeepwaterC => "DEEPWATER_C",
            JordanMechanism::None => "NONE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JordanInfo {
    pub chain_length_at_least_2: bool,
    pub mechanism: JordanMechanism,
}

impl JordanInfo {
    pub const SIMPLE: JordanInfo = JordanInfo {
        chain_length_at_least_2: false,
        mechanism: JordanMechanism::None,
    };
}

/// A purely imaginary eigenvalue `i s` of Fourier mode `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeEigenvalue {
    pub k: i64,
    pub s: f64,
    pub sigma: f64,
    pub geometric_mult: usize,
    pub jordan: JordanInfo,
    /// Sign of `b_k` at the eigenvalue (the closed forms do not assume it).
    pub b_sign: i8,
    /// Set when the root sits at the edge of the scan window.
    pub reduced_confidence: bool,
}

/// Tangency residual along `S_k`:
/// `2 sin(t2) sigma^2 (1 + sigma^4) - a b ((1 + c)(1 + sigma^4) + 4 sigma^4)`,
/// returned with a magnitude scale.
pub fn tangency_condition(k: i64, s: f64, params: &FluidParams, geom: &WaveGeometry) -> (f64, f64) {
    let sig2 = sigma_sq(k, s, geom);
    let sig = sqrt(sig2.max(0.0));
    let a = a_k(k, s, geom);
    let b = b_k(k, s, geom);
    let c = params.cosech_factor(sig);
    let q = 1.0 + sig2 * sig2;
    let lhs = 2.0 * sin(geom.theta2) * sig2 * q;
    let rhs = a * b * ((1.0 + c) * q + 4.0 * sig2 * sig2);
    (lhs - rhs, abs(lhs) + abs(rhs))
}

/// Decides whether the eigenvalue `i s` of mode `k` carries a Jordan chain.
pub fn detect_jordan(
    k: i64,
    s: f64,
    params: &FluidParams,
    geom: &WaveGeometry,
) -> Result<JordanInfo> {
    params.validate()?;
    geom.validate()?;
    let sig2 = sigma_sq(k, s, geom);
    if sig2 <= 0.0 {
        return Err(Error::Degenerate("sigma_k vanishes".into()));
    }
    let sig = sqrt(sig2);
    let b = b_k(k, s, geom);
    let g2b2 = params.gamma * params.gamma * b * b;
    let value = params.radial(sig) - g2b2;
    if abs(value) > 1e-8 * (params.radial(sig) + g2b2) {
        return Err(precondition(format!(
            "(k, s) = ({k}, {s}) is not an eigenvalue (residual {value:e})"
        )));
    }
    let (tau, scale) = tangency_condition(k, s, params, geom);
    if abs(tau) > TANGENCY_TOL * scale.max(1e-300) {
        return Ok(JordanInfo::SIMPLE);
    }
    let mechanism = if params.is_deep() {
        JordanMechanism::DeepwaterC
    } else {
        let a = a_k(k, s, geom);
        let c = params.cosech_factor(sig);
        let den = (5.0 + c) * a * b - 2.0 * sin(geom.theta2) * sig2;
        let dscale = abs((5.0 + c) * a * b) + abs(2.0 * sin(geom.theta2) * sig2);
        if abs(den) <= TANGENCY_TOL * dscale.max(1e-300) || dscale == 0.0 {
            JordanMechanism::DegenerateB
        } else {
            JordanMechanism::CurveCk
        }
    };
    Ok(JordanInfo {
        chain_length_at_least_2: true,
        mechanism,
    })
}

/// All roots `s` in `window` of the mode-`k` eigenvalue equation, found by
/// sign changes on [`SCAN_POINTS`] samples and bisection. `(k, s) = (0, 0)`
/// is excluded. Roots are sorted by `s`.
pub fn mode_eigenvalues(
    k: i64,
    params: &FluidParams,
    geom: &WaveGeometry,
    window: (f64, f64),
) -> Result<Vec<ModeEigenvalue>> {
    params.validate()?;
    geom.validate()?;
    let (lo, hi) = window;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(domain("scan window must be a bounded interval"));
    }
    let f = |s: f64| mode_function(k, s, params, geom);
    let grid = lin_grid(lo, hi, SCAN_POINTS);
    let mut out = Vec::new();
    for (a, b) in sign_change_brackets(f, &grid) {
        let s = bisect(f, a, b, 1e-15);
        let sig2 = sigma_sq(k, s, geom);
        if k == 0 && abs(s) <= 1e-9 {
            continue;
        }
        if sig2 <= 0.0 {
            continue;
        }
        if out.last().map_or(false, |m: &ModeEigenvalue| {
            abs(m.s - s) <= 1e-12 * abs(s).max(1.0)
        }) {
            continue;
        }
        let jordan = detect_jordan(k, s, params, geom)?;
        let bk = b_k(k, s, geom);
        let edge = abs(s - lo) <= (hi - lo) / SCAN_POINTS as f64
            || abs(s - hi) <= (hi - lo) / SCAN_POINTS as f64;
        out.push(ModeEigenvalue {
            k,
            s,
            sigma: sqrt(sig2),
            geometric_mult: 1,
            jordan,
            b_sign: if bk > 0.0 {
                1
            } else if bk < 0.0 {
                -1
            } else {
                0
            },
            reduced_confidence: edge,
        });
    }
    Ok(out)
}

/// Largest `|l|` on the dispersion curve (zero when the curve is empty).
pub fn curve_radius(params: &FluidParams) -> f64 {
    axis_roots(params, DEFAULT_A_MAX)
        .last()
        .copied()
        .unwrap_or(0.0)
}

/// A candidate resonance: `+-i s` are double eigenvalues coming from modes
/// `+-1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceConfig {
    pub params: FluidParams,
    pub geom: WaveGeometry,
    pub s: f64,
    pub k_checked: usize,
}

/// Per-mode outcome of [`check_nonresonance`].
#[derive(Debug, Clone, PartialEq)]
pub struct ModeCheck {
    pub k: i64,
    /// Roots found on `S_k`.
    pub roots: Vec<f64>,
    /// `min D / sigma^2` along the scanned part of `S_k`; positive when the
    /// line misses the curve.
    pub margin: f64,
}

/// A violated condition.
#[derive(Debug, Clone, PartialEq)]
pub struct CertFailure {
    pub k: i64,
    pub s: Option<f64>,
    pub reason: &'static str,
}

/// Numerical certificate of the nonresonance conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct CertReport {
    pub passed: bool,
    /// Radius of the smallest disc containing the dispersion curve.
    pub curve_radius: f64,
    /// All `|k| >= tail_bound` lines lie outside that disc.
    pub tail_bound: usize,
    /// Largest `|k|` scanned explicitly.
    pub k_scanned: usize,
    pub modes: Vec<ModeCheck>,
    pub failures: Vec<CertFailure>,
    pub transversality: Option<f64>,
}

/// Checks: `S_0` misses the curve, `S_{+-1}` meet it exactly at `s = +-s`,
/// `S_k` misses it for `2 <= |k| <= K`, where `K` is the larger of `k_max`
/// and the distance bound beyond which lines cannot reach the curve; and the
/// collision is transversal.
pub fn check_nonresonance(config: &ResonanceConfig, k_max: usize) -> Result<CertReport> {
    if k_max < 2 {
        return Err(domain("k_max must be at least 2"));
    }
    let params = &config.params;
    let geom = &config.geom;
    params.validate()?;
    geom.validate()?;
    let radius = curve_radius(params);
    let spacing = geom.nu0 * abs(geom.sin_diff());
    let tail_bound = (radius / spacing) as usize + 1;
    let k_scanned = k_max.max(tail_bound);
    let mut modes = Vec::new();
    let mut failures = Vec::new();
    let kk = k_scanned as i64;
    for k in -kk..=kk {
        let reach = radius + abs(k as f64) * geom.nu0 + 1.0;
        let window = (-reach, reach);
        let eigs = mode_eigenvalues(k, params, geom, window)?;
        let roots: Vec<f64> = eigs.iter().map(|e| e.s).collect();
        let margin = line_margin(k, params, geom, window);
        match k.unsigned_abs() {
            1 => {
                let expect = [-config.s, config.s];
                let ok = roots.len() == 2
                    && roots
                        .iter()
                        .zip(expect.iter())
                        .all(|(r, e)| abs(r - e) <= 1e-8 * e.abs().max(1.0));
                if !ok {
                    if roots.is_empty() {
                        failures.push(CertFailure {
                            k,
                            s: None,
                            reason: "S_k misses the curve",
                        });
                    }
                    for r in &roots {
                        if !expect.iter().any(|e| abs(r - e) <= 1e-8 * e.abs().max(1.0)) {
                            failures.push(CertFailure {
                                k,
                                s: Some(*r),
                                reason: "unexpected intersection",
                            });
                        }
                    }
                    for e in expect {
                        if !roots.iter().any(|r| abs(r - e) <= 1e-8 * e.abs().max(1.0)) {
                            failures.push(CertFailure {
                                k,
                                s: Some(e),
                                reason: "missing intersection",
                            });
                        }
                    }
                }
                for e in &eigs {
                    if e.jordan.chain_length_at_least_2 {
                        failures.push(CertFailure {
                            k,
                            s: Some(e.s),
                            reason: "tangential intersection",
                        });
                    }
                }
            }
            _ => {
                for r in &roots {
                    failures.push(CertFailure {
                        k,
                        s: Some(*r),
                        reason: "resonant intersection",
                    });
                }
            }
        }
        modes.push(ModeCheck { k, roots, margin });
    }
    let transversality = match transversality(config) {
        Ok(t) => {
            if abs(t) <= 1e-8 {
                failures.push(CertFailure {
                    k: 1,
                    s: Some(config.s),
                    reason: "non-transversal collision",
                });
            }
            Some(t)
        }
        Err(_) => {
            failures.push(CertFailure {
                k: 1,
                s: Some(config.s),
                reason: "eigenvalue not simple along S_1",
            });
            None
        }
    };
    Ok(CertReport {
        passed: failures.is_empty(),
        curve_radius: radius,
        tail_bound,
        k_scanned,
        modes,
        failures,
        transversality,
    })
}

fn line_margin(k: i64, params: &FluidParams, geom: &WaveGeometry, window: (f64, f64)) -> f64 {
    let grid = lin_grid(window.0, window.1, SCAN_POINTS);
    let mut m = f64::INFINITY;
    for s in grid {
        let sig2 = sigma_sq(k, s, geom);
        if sig2 <= 1e-18 {
            continue;
        }
        m = m.min(mode_function(k, s, params, geom) / sig2);
    }
    m
}

/// Angles and speed produced by [`select_parameters`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Selection {
    pub theta1: f64,
    pub theta2: f64,
    pub gamma: f64,
    /// Angle between `l1 = S_1(s)` and `l2 = S_1(-s)`.
    pub psi: f64,
}

impl Selection {
    pub fn geometry(&self, nu0: f64) -> Result<WaveGeometry> {
        WaveGeometry::new(self.theta1, self.theta2, nu0)
    }
}

fn unit(theta: f64) -> (f64, f64) {
    (sin(theta), -cos(theta))
}

fn wrap_pi(theta: f64) -> f64 {
    let mut t = theta % PI;
    if t < 0.0 {
        t += PI;
    }
    if t >= PI {
        t -= PI;
    }
    t
}

/// Chooses `theta1`, `theta2` (with `theta2 - theta1 = dtheta`) and `gamma`
/// such that `i s` is an eigenvalue of modes `1` and `-1`, i.e. `S_1(+-s)`
/// and `S_{-1}(+-s)` lie on the dispersion curve. `Ok(None)` when
/// `l1 = S_1(s)` and `l2 = S_1(-s)` are parallel.
pub fn select_parameters(beta: f64, s: f64, nu0: f64, dtheta: f64) -> Result<Option<Selection>> {
    select_parameters_in_frame(beta, s, nu0, 0.0, dtheta)
}

/// [`select_parameters`] starting from an arbitrary reference orientation
/// `(theta1_ref, theta2_ref)`; the speed does not depend on it.
pub fn select_parameters_in_frame(
    beta: f64,
    s: f64,
    nu0: f64,
    theta1_ref: f64,
    theta2_ref: f64,
) -> Result<Option<Selection>> {
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(domain("beta must be finite and >= 0"));
    }
    if !(s > 0.0 && nu0 > 0.0) || !s.is_finite() || !nu0.is_finite() {
        return Err(domain("s and nu0 must be finite and > 0"));
    }
    if !theta1_ref.is_finite() || !theta2_ref.is_finite() {
        return Err(domain("angles must be finite"));
    }
    let params = FluidParams { beta, gamma: 1.0 };
    let (ez0, ez1) = unit(theta2_ref);
    let (ex0, ex1) = unit(theta1_ref);
    let n1 = (s * ez0 + nu0 * ex0, s * ez1 + nu0 * ex1);
    let n2 = (-s * ez0 + nu0 * ex0, -s * ez1 + nu0 * ex1);
    let m1 = sqrt(n1.0 * n1.0 + n1.1 * n1.1);
    let m2 = sqrt(n2.0 * n2.0 + n2.1 * n2.1);
    let det = n1.0 * n2.1 - n1.1 * n2.0;
    if abs(det) <= 1e-14 * m1 * m2 {
        return Ok(None);
    }
    let al1 = sqrt(params.radial(m1));
    let al2 = sqrt(params.radial(m2));
    let v0 = (al1 * n2.1 - al2 * n1.1) / det;
    let v1 = (al2 * n1.0 - al1 * n2.0) / det;
    let phi = atan2(v1, v0);
    let gamma = sqrt(v0 * v0 + v1 * v1);
    let psi = acos_clamped((n1.0 * n2.0 + n1.1 * n2.1) / (m1 * m2));
    Ok(Some(Selection {
        theta1: wrap_pi(theta1_ref - phi),
        theta2: wrap_pi(theta2_ref - phi),
        gamma,
        psi,
    }))
}

/// Builds a [`ResonanceConfig`] from a selection.
pub fn config_from_selection(
    beta: f64,
    s: f64,
    nu0: f64,
    sel: &Selection,
    k_checked: usize,
) -> Result<ResonanceConfig> {
    Ok(ResonanceConfig {
        params: FluidParams::new(beta, sel.gamma)?,
        geom: sel.geometry(nu0)?,
        s,
        k_checked,
    })
}

/// `g(t, nu, k)` in dispersion form with its partial derivatives
/// `(g, g_t, g_nu)`.
pub fn branch_function(
    t: f64,
    nu: f64,
    k: i64,
    params: &FluidParams,
    geom: &WaveGeometry,
) -> (f64, f64, f64) {
    let kf = k as f64;
    let c = geom.cos_diff();
    let sig2 = t * t + 2.0 * kf * nu * t * c + kf * kf * nu * nu;
    let sig = sqrt(sig2.max(0.0));
    let b = kf * nu * sin(geom.theta1) + t * sin(geom.theta2);
    let g2 = params.gamma * params.gamma;
    let (r1, _) = params.radial_derivatives(sig);
    let g = params.radial(sig) - g2 * b * b;
    let gt = r1 * (t + kf * nu * c) / sig - 2.0 * g2 * b * sin(geom.theta2);
    let gn = r1 * (kf * t * c + kf * kf * nu) / sig - 2.0 * g2 * b * kf * sin(geom.theta1);
    (g, gt, gn)
}

/// Continues the roots `s_{+1}`, `s_{-1}` of `g(., nu0 + mu1, +-1)` from
/// `s` by Newton's method.
pub fn eigenvalue_branches(mu1: f64, config: &ResonanceConfig) -> Result<(f64, f64)> {
    let nu = config.geom.nu0 + mu1;
    if !(nu > 0.0) {
        return Err(domain("nu0 + mu1 must stay positive"));
    }
    let solve = |k: i64| -> Result<f64> {
        let mut t = config.s;
        for it in 0..60 {
            let (g, gt, _) = branch_function(t, nu, k, &config.params, &config.geom);
            if gt == 0.0 || !gt.is_finite() {
                return Err(Error::NonConvergence {
                    stage: "eigenvalue branch",
                    iterations: it,
                    residual: abs(g),
                });
            }
            let dt = g / gt;
            t -= dt;
            if abs(dt) <= 1e-15 * abs(t).max(1.0) {
                let (g, _, _) = branch_function(t, nu, k, &config.params, &config.geom);
                let scale = config.params.radial(sqrt(sigma_sq(
                    k,
                    t,
                    &WaveGeometry {
                        nu0: nu,
                        ..config.geom
                    },
                )));
                if abs(g) <= 1e-12 * scale.max(1.0)
                    && abs(t - config.s) < 0.5 * config.s.max(1e-3) + abs(mu1) * 10.0
                {
                    return Ok(t);
                }
                break;
            }
        }
        Err(Error::NonConvergence {
            stage: "eigenvalue branch",
            iterations: 60,
            residual: f64::NAN,
        })
    };
    Ok((solve(1)?, solve(-1)?))
}

/// Slopes `d s_{+-1} / d mu1 = -g_nu / g_t` at `mu1 = 0`.
pub fn branch_slopes(config: &ResonanceConfig) -> Result<(f64, f64)> {
    let slope = |k: i64| -> Result<f64> {
        let (_, gt, gn) =
            branch_function(config.s, config.geom.nu0, k, &config.params, &config.geom);
        let (_, gt0, gn0) = (0.0, abs(gt), abs(gn));
        if gt0 <= 1e-12 * (gt0 + gn0).max(1e-300) {
            return Err(Error::Degenerate(format!(
                "g_t vanishes on S_{k}: tangency with the line direction"
            )));
        }
        Ok(-gn / gt)
    };
    Ok((slope(1)?, slope(-1)?))
}

/// `d/dmu (s_1 - s_{-1})` at `mu = 0`, i.e.
/// `det[[g_t(+), g_t(-)], [g_nu(+), g_nu(-)]] / (g_t(+) g_t(-))`.
pub fn transversality(config: &ResonanceConfig) -> Result<f64> {
    let (a, b) = branch_slopes(config)?;
    Ok(a - b)
}

/// Roots of the mode-`k` equation for all `|k| <= kmax` in a window, keyed
/// by mode and sorted.
pub fn spectrum_catalog(
    params: &FluidParams,
    geom: &WaveGeometry,
    kmax: usize,
    window: (f64, f64),
) -> Result<Vec<ModeEigenvalue>> {
    let mut all = vec![];
    let kk = kmax as i64;
    for k in -kk..=kk {
        all.extend(mode_eigenvalues(k, params, geom, window)?);
    }
    Ok(all)
}
