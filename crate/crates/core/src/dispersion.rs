//! The hydroelastic dispersion relation
//!
//! `D(l1, l2) = (1 + |l|^4) |l| tanh(|l| / beta) - gamma^2 l1^2`,
//!
//! its zero set (the dispersion curve), and the partition of the
//! `(beta, gamma)` plane by the curves `D1` and `D2`. `beta = 0` (infinite
//! depth) is an exact branch on which the `tanh` factor is identically one.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::math::{abs, atan, exp, hypot, ln, pow, sqrt, tanh, two_x_cosech_two_x};
use crate::roots::{bisect, lin_grid, log_grid, roots_on_grid};

/// Default upper end of the radial search range.
pub const DEFAULT_A_MAX: f64 = 50.0;
/// Relative tolerance for membership of `D1` and `D2`.
pub const BOUNDARY_TOL: f64 = 1e-9;
const BRACKET_POINTS: usize = 512;
const BRACKET_MIN: f64 = 1e-6;

/// Dimensionless depth `beta >= 0` and wave speed `gamma > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidParams {
    pub beta: f64,
    pub gamma: f64,
}

impl FluidParams {
    pub fn new(beta: f64, gamma: f64) -> Result<Self> {
        let p = Self { beta, gamma };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.beta.is_finite() || !self.gamma.is_finite() {
            return Err(domain("beta and gamma must be finite"));
        }
        if self.beta < 0.0 {
            return Err(domain(format!("beta must be >= 0, got {}", self.beta)));
        }
        if self.gamma <= 0.0 {
            return Err(domain(format!("gamma must be > 0, got {}", self.gamma)));
        }
        Ok(())
    }

    pub fn is_deep(&self) -> bool {
        self.beta == 0.0
    }

    /// `tanh(sigma / beta)`, or one for infinite depth.
    pub fn depth_factor(&self, sigma: f64) -> f64 {
        if self.beta == 0.0 {
            1.0
        } else {
            tanh(sigma / self.beta)
        }
    }

    /// Derivative of [`depth_factor`](Self::depth_factor) in `sigma`.
    pub fn depth_factor_d1(&self, sigma: f64) -> f64 {
        if self.beta == 0.0 {
            return 0.0;
        }
        let t = tanh(sigma / self.beta);
        (1.0 - t * t) / self.beta
    }

    pub fn depth_factor_d2(&self, sigma: f64) -> f64 {
        if self.beta == 0.0 {
            return 0.0;
        }
        let t = tanh(sigma / self.beta);
        -2.0 * t * (1.0 - t * t) / (self.beta * self.beta)
    }

    /// `R(sigma) = (1 + sigma^4) sigma tanh(sigma / beta)`.
    pub fn radial(&self, sigma: f64) -> f64 {
        let s2 = sigma * sigma;
        (1.0 + s2 * s2) * sigma * self.depth_factor(sigma)
    }

    /// First and second derivatives of [`radial`](Self::radial).
    pub fn radial_derivatives(&self, sigma: f64) -> (f64, f64) {
        let s2 = sigma * sigma;
        let a = sigma + s2 * s2 * sigma;
        let a1 = 1.0 + 5.0 * s2 * s2;
        let a2 = 20.0 * s2 * sigma;
        let t = self.depth_factor(sigma);
        let t1 = self.depth_factor_d1(sigma);
        let t2 = self.depth_factor_d2(sigma);
        (a1 * t + a * t1, a2 * t + 2.0 * a1 * t1 + a * t2)
    }

    /// `2 sigma / beta * cosech(2 sigma / beta)`, zero for infinite depth.
    pub fn cosech_factor(&self, sigma: f64) -> f64 {
        if self.beta == 0.0 {
            0.0
        } else {
            two_x_cosech_two_x(sigma / self.beta)
        }
    }
}

/// Evaluates `D(l1, l2)`.
pub fn dispersion_value(l1: f64, l2: f64, params: &FluidParams) -> Result<f64> {
    if !l1.is_finite() || !l2.is_finite() {
        return Err(domain("dispersion_value needs finite wavenumbers"));
    }
    params.validate()?;
    Ok(dispersion_unchecked(l1, l2, params))
}

pub(crate) fn dispersion_unchecked(l1: f64, l2: f64, params: &FluidParams) -> f64 {
    let sigma = hypot(l1, l2);
    params.radial(sigma) - params.gamma * params.gamma * l1 * l1
}

/// Gradient and Hessian `(D_x, D_y, D_xx, D_xy, D_yy)` of `D` at a point
/// away from the origin.
pub fn dispersion_derivatives(l1: f64, l2: f64, params: &FluidParams) -> [f64; 5] {
    let sigma = hypot(l1, l2);
    let (p1, p2) = params.radial_derivatives(sigma);
    let q = p1 / sigma;
    let dq = (p2 * sigma - p1) / (sigma * sigma);
    let g2 = params.gamma * params.gamma;
    [
        q * l1 - 2.0 * g2 * l1,
        q * l2,
        q + dq * l1 * l1 / sigma - 2.0 * g2,
        dq * l1 * l2 / sigma,
        q + dq * l2 * l2 / sigma,
    ]
}

/// One sample `(a, l1, l2)` of the dispersion curve, `a = |l|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub a: f64,
    pub l1: f64,
    pub l2: f64,
}

/// A connected positive-quadrant piece of the dispersion curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveTrace {
    pub branch_id: usize,
    pub samples: Vec<CurveSample>,
}

fn l1_squared(a: f64, params: &FluidParams) -> f64 {
    params.radial(a) / (params.gamma * params.gamma)
}

fn sample_at(a: f64, params: &FluidParams) -> Option<CurveSample> {
    let l1sq = l1_squared(a, params);
    let l2sq = a * a - l1sq;
    if l2sq < 0.0 {
        return None;
    }
    Some(CurveSample {
        a,
        l1: sqrt(l1sq),
        l2: sqrt(l2sq),
    })
}

/// Traces the positive-quadrant part of the dispersion curve through the
/// parametrisation `l1^2 = (1 + a^4) a tanh(a / beta) / gamma^2`,
/// `l2^2 = a^2 - l1^2` on `n` evenly spaced values of `a`. Runs of admissible
/// samples become separate branches; their ends on the `l1` axis are refined
/// by bisection and appended as exact axis points.
pub fn trace_curve(
    params: &FluidParams,
    a_min: f64,
    a_max: f64,
    n: usize,
) -> Result<Vec<CurveTrace>> {
    params.validate()?;
    if !(a_min > 0.0 && a_max > a_min && a_max.is_finite()) {
        return Err(domain("trace_curve needs 0 < a_min < a_max"));
    }
    if n < 2 {
        return Err(domain("trace_curve needs at least two samples"));
    }
    let existence = |a: f64| a * a - l1_squared(a, params);
    let grid = lin_grid(a_min, a_max, n);
    let mut branches: Vec<CurveTrace> = Vec::new();
    let mut current: Vec<CurveSample> = Vec::new();
    let mut prev: Option<f64> = None;
    for &a in &grid {
        match sample_at(a, params) {
            Some(sample) => {
                if current.is_empty() {
                    if let Some(pa) = prev {
                        let edge = bisect(existence, pa, a, 1e-15);
                        current.push(CurveSample {
                            a: edge,
                            l1: edge,
                            l2: 0.0,
                        });
                    }
                }
                current.push(sample);
            }
            None => {
                if !current.is_empty() {
                    let last = current.last().map(|s| s.a).unwrap_or(a);
                    let edge = bisect(existence, last, a, 1e-15);
                    current.push(CurveSample {
                        a: edge,
                        l1: edge,
                        l2: 0.0,
                    });
                    branches.push(CurveTrace {
                        branch_id: branches.len(),
                        samples: core::mem::take(&mut current),
                    });
                }
            }
        }
        prev = Some(a);
    }
    if !current.is_empty() {
        branches.push(CurveTrace {
            branch_id: branches.len(),
            samples: current,
        });
    }
    Ok(branches)
}

/// Regions of the `(beta, gamma)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    EmptyBelowD1,
    BetweenNonconvex,
    BetweenConvex,
    AboveD2,
    OnD1,
    OnD2,
}

impl Region {
    pub fn name(&self) -> &'static str {
        match self {
            Region::EmptyBelowD1 => "EMPTY_BELOW_D1",
            Region::BetweenNonconvex => "BETWEEN_NONCONVEX",
            Region::BetweenConvex => "BETWEEN_CONVEX",
            Region::AboveD2 => "ABOVE_D2",
            Region::OnD1 => "ON_D1",
            Region::OnD2 => "ON_D2",
        }
    }
}

/// Result of [`classify_region`].
#[derive(Debug, Clone, PartialEq)]
pub struct RegionClass {
    pub region: Region,
    /// Positive `l1` with `D(l1, 0) = 0`, ascending.
    pub axis_roots: Vec<f64>,
    /// Angle of the curve with the `l1` axis at the origin (above `D2` only).
    pub origin_angle: Option<f64>,
    /// Number of inflection points of the positive-quadrant branch (between
    /// `D1` and `D2` only).
    pub inflections: Option<usize>,
}

/// Positive roots of `D(l, 0)`, found by sign changes on 512 log-spaced
/// points of `(1e-6, a_max]`.
pub fn axis_roots(params: &FluidParams, a_max: f64) -> Vec<f64> {
    let grid = log_grid(BRACKET_MIN, a_max, BRACKET_POINTS);
    let f = |l: f64| axis_function(l, params);
    roots_on_grid(f, &grid, 1e-15)
}

/// `D(l, 0) / l = (1 + l^4) tanh(l / beta) - gamma^2 l`.
pub fn axis_function(l: f64, params: &FluidParams) -> f64 {
    (1.0 + l * l * l * l) * params.depth_factor(l) - params.gamma * params.gamma * l
}

/// `1 - 2x cosech(2x)`, accurate for small `x`.
fn one_minus_c(x: f64) -> f64 {
    let t = 2.0 * x;
    if abs(t) < 1e-2 {
        let t2 = t * t;
        t2 / 6.0 - 7.0 * t2 * t2 / 360.0 + 31.0 * t2 * t2 * t2 / 15120.0
    } else {
        1.0 - two_x_cosech_two_x(x)
    }
}

/// The curve `D1` at parameter `a`: `(beta_0(a), gamma_0(a))`, the `k = 0`,
/// `theta2 = pi/2` member of the family [`curve_ck`], evaluated in a form
/// that stays accurate for small `a`.
pub fn d1_point(a: f64) -> (f64, f64) {
    let c = two_x_cosech_two_x(a);
    let b4 = one_minus_c(a) / (a * a * a * a * (3.0 + c));
    let beta = pow(b4, 0.25);
    let g2 = (1.0 + b4 * a * a * a * a) * tanh(a) / (beta * a);
    (beta, sqrt(g2))
}

/// The point of `D1` above a given `beta > 0`, together with the double
/// root `l* = a beta` of `D(l, 0)` there. Returns `(gamma_D1, l*)`.
pub fn d1_ordinate(beta: f64) -> Result<(f64, f64)> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(domain("d1_ordinate needs beta > 0"));
    }
    let target = ln(beta);
    let f = |la: f64| ln(d1_point(exp(la)).0) - target;
    let (mut lo, mut hi) = (-30.0, 30.0);
    if f(lo) < 0.0 || f(hi) > 0.0 {
        return Err(domain(format!(
            "beta = {beta} is outside the tabulated range of D1"
        )));
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    let a = exp(0.5 * (lo + hi));
    let (_, gamma) = d1_point(a);
    Ok((gamma, a * beta))
}

/// `D1` ordinate for infinite depth: `gamma^2 = min (1 + l^4) / l`.
pub fn d1_ordinate_deep() -> (f64, f64) {
    let l = pow(1.0 / 3.0, 0.25);
    (sqrt((1.0 + l * l * l * l) / l), l)
}

/// Classifies `(beta, gamma)` relative to the curves `D1` and `D2`.
pub fn classify_region(params: &FluidParams) -> Result<RegionClass> {
    classify_region_with(params, DEFAULT_A_MAX)
}

/// [`classify_region`] with an explicit radial search bound.
pub fn classify_region_with(params: &FluidParams, a_max: f64) -> Result<RegionClass> {
    params.validate()?;
    let gamma = params.gamma;
    let mut roots = axis_roots(params, a_max);
    if params.beta > 0.0 {
        let g2 = 1.0 / sqrt(params.beta);
        if abs(gamma - g2) <= BOUNDARY_TOL * g2 {
            return Ok(RegionClass {
                region: Region::OnD2,
                axis_roots: roots,
                origin_angle: Some(0.0),
                inflections: None,
            });
        }
        if gamma > g2 {
            let angle = atan(sqrt(gamma * gamma * params.beta - 1.0));
            return Ok(RegionClass {
                region: Region::AboveD2,
                axis_roots: roots,
                origin_angle: Some(angle),
                inflections: None,
            });
        }
    }
    let (g1, lstar) = if params.beta > 0.0 {
        d1_ordinate(params.beta)?
    } else {
        d1_ordinate_deep()
    };
    if abs(gamma - g1) <= BOUNDARY_TOL * g1 {
        if roots.is_empty() {
            roots.push(lstar);
        }
        return Ok(RegionClass {
            region: Region::OnD1,
            axis_roots: roots,
            origin_angle: None,
            inflections: None,
        });
    }
    if gamma < g1 {
        return Ok(RegionClass {
            region: Region::EmptyBelowD1,
            axis_roots: Vec::new(),
            origin_angle: None,
            inflections: None,
        });
    }
    if roots.len() != 2 {
        return Err(Error::Degenerate(format!(
            "expected two axis roots between D1 and D2, found {}",
            roots.len()
        )));
    }
    let count = inflection_count(params, roots[0], roots[1], 4001);
    let region = if count == 0 {
        Region::BetweenConvex
    } else {
        Region::BetweenNonconvex
    };
    Ok(RegionClass {
        region,
        axis_roots: roots,
        origin_angle: None,
        inflections: Some(count),
    })
}

/// Signed curvature numerator of the implicit curve `D = 0` at a point.
pub fn curvature_numerator(l1: f64, l2: f64, params: &FluidParams) -> f64 {
    let [dx, dy, dxx, dxy, dyy] = dispersion_derivatives(l1, l2, params);
    dxx * dy * dy - 2.0 * dxy * dx * dy + dyy * dx * dx
}

/// Number of curvature sign changes along the arch joining the axis roots
/// `a1 < a2`, sampled at `n` interior parameter values.
pub fn inflection_count(params: &FluidParams, a1: f64, a2: f64, n: usize) -> usize {
    let mut count = 0;
    let mut last_sign: Option<bool> = None;
    let scale = {
        let [dx, dy, ..] = dispersion_derivatives(a1, 0.0, params);
        let g = hypot(dx, dy);
        g * g * g
    };
    for i in 1..n {
        let a = a1 + (a2 - a1) * i as f64 / n as f64;
        let Some(s) = sample_at(a, params) else {
            continue;
        };
        let k = curvature_numerator(s.l1, s.l2, params);
        if abs(k) <= 1e-10 * scale.max(1e-300) {
            continue;
        }
        let sign = k > 0.0;
        if let Some(prev) = last_sign {
            if prev != sign {
                count += 1;
            }
        }
        last_sign = Some(sign);
    }
    count
}

/// Result of [`mode0_diagram`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mode0Diagram {
    /// Number of pairs `+-i s`, `s > 0`, of mode-0 eigenvalues.
    pub nonzero_pairs: usize,
    /// Length of the Jordan chain at zero (0 when the origin is in the
    /// essential spectrum).
    pub zero_chain_length: u8,
    pub essential_spectrum: bool,
}

/// Counts mode-0 imaginary eigenvalues for the line direction `theta2`.
pub fn mode0_diagram(params: &FluidParams, theta2: f64) -> Result<Mode0Diagram> {
    params.validate()?;
    if !theta2.is_finite() {
        return Err(domain("theta2 must be finite"));
    }
    let st = crate::math::sin(theta2);
    let geff = params.gamma * abs(st);
    let eff = FluidParams {
        beta: params.beta,
        gamma: geff.max(f64::MIN_POSITIVE),
    };
    let nonzero_pairs = if geff == 0.0 {
        0
    } else {
        axis_roots(&eff, DEFAULT_A_MAX).len()
    };
    if params.beta == 0.0 {
        return Ok(Mode0Diagram {
            nonzero_pairs,
            zero_chain_length: 0,
            essential_spectrum: true,
        });
    }
    let inv = 1.0 / (params.gamma * params.gamma);
    let target = params.beta * st * st;
    let zero_chain_length = if abs(inv - target) <= BOUNDARY_TOL * inv {
        4
    } else {
        2
    };
    Ok(Mode0Diagram {
        nonzero_pairs,
        zero_chain_length,
        essential_spectrum: false,
    })
}

/// Point `(beta_k, gamma_k)` of the tangency curve `C_k` at scaled
/// eigenvalue `a` and scaled spacing `nu_tilde`. `Ok(None)` when the formula
/// gives no admissible point; an error when the denominator vanishes (the
/// degenerate case, which forces `theta2 = 0`).
pub fn curve_ck(
    a: f64,
    k: i64,
    theta1: f64,
    theta2: f64,
    nu_tilde: f64,
) -> Result<Option<(f64, f64)>> {
    if !(a > 0.0)
        || !a.is_finite()
        || !theta1.is_finite()
        || !theta2.is_finite()
        || !nu_tilde.is_finite()
    {
        return Err(domain("curve_ck needs finite a > 0"));
    }
    let kf = k as f64;
    let cd = crate::math::cos(theta1 - theta2);
    let s2 = crate::math::sin(theta2);
    let sig2 = a * a + 2.0 * kf * nu_tilde * a * cd + kf * kf * nu_tilde * nu_tilde;
    if sig2 <= 0.0 {
        return Err(Error::Degenerate("sigma_k vanishes".into()));
    }
    let sig = sqrt(sig2);
    let at = a + kf * nu_tilde * cd;
    let bt = kf * nu_tilde * crate::math::sin(theta1) + a * s2;
    let c = two_x_cosech_two_x(sig);
    let num = 2.0 * s2 * sig2 - (1.0 + c) * at * bt;
    let den = (5.0 + c) * at * bt - 2.0 * s2 * sig2;
    let scale = abs(at * bt) + abs(s2 * sig2);
    if abs(den) <= 1e-14 * scale.max(1e-300) {
        return Err(Error::Degenerate(
            "vanishing denominator of C_k (theta2 = 0 case)".into(),
        ));
    }
    let b4 = num / (sig2 * sig2 * den);
    if !(b4 > 0.0) || bt == 0.0 {
        return Ok(None);
    }
    let beta = pow(b4, 0.25);
    let g2 = (1.0 + b4 * sig2 * sig2) * sig * tanh(sig) / (beta * bt * bt);
    if !(g2 > 0.0) || !g2.is_finite() {
        return Ok(None);
    }
    Ok(Some((beta, sqrt(g2))))
}
