use alloc::vec;
use alloc::vec::Vec;

use super::branch::OrbitPoint;
use super::system::HamiltonianSystem;
use crate::error::{Error, Result};
use crate::linalg::Lu;
use crate::math::{abs, pow, sqrt};

/// Relative and absolute tolerance of the verification integrator.
pub const RK_TOL: f64 = 1e-12;
/// Number of equispaced comparison times per period.
pub const ORACLE_SAMPLES: usize = 64;

/// Independent time-domain check of a branch point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitVerification {
    /// `|v(T) - v(0)|` after integrating one period.
    pub closure_residual: f64,
    pub reversibility_residual: f64,
    /// `max |H(v(t)) - H(v(0))|` at the comparison times.
    pub energy_drift: f64,
    /// Sup-norm distance between the loop `u((kappa + mu2) t)` and the trajectory.
    pub oracle_error: f64,
    pub steps: usize,
}

/// Vector field `J(v)^{-1} grad H(v)`.
pub fn vector_field(sys: &HamiltonianSystem, v: &[f64], mu1: f64, out: &mut [f64]) -> Result<()> {
    let mut g = vec![0.0; v.len()];
    sys.hamiltonian.gradient(v, mu1, &mut g);
    let j = sys.structure.matrix(v, mu1);
    let x = Lu::new(&j)?.solve(&g);
    out.copy_from_slice(&x);
    Ok(())
}

/// Dormand-Prince 5(4) with standard step-size control, from `t0` to `t1`.
pub fn integrate(
    sys: &HamiltonianSystem,
    mu1: f64,
    v0: &[f64],
    t0: f64,
    t1: f64,
    h0: &mut f64,
    steps: &mut usize,
) -> Result<Vec<f64>> {
    const A: [[f64; 6]; 7] = [
        [0.0; 6],
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [
            19372.0 / 6561.0,
            -25360.0 / 2187.0,
            64448.0 / 6561.0,
            -212.0 / 729.0,
            0.0,
            0.0,
        ],
        [
            9017.0 / 3168.0,
            -355.0 / 33.0,
            46732.0 / 5247.0,
            49.0 / 176.0,
            -5103.0 / 18656.0,
            0.0,
        ],
        [
            35.0 / 384.0,
            0.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
        ],
    ];
    const B5: [f64; 7] = [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
        0.0,
    ];
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];
    let n = v0.len();
    let mut v = v0.to_vec();
    let mut t = t0;
    let mut k = vec![vec![0.0; n]; 7];
    let mut tmp = vec![0.0; n];
    let span = t1 - t0;
    if span <= 0.0 {
        return Ok(v);
    }
    let mut h = h0.min(span);
    while t < t1 {
        if h < 1e-12 * span {
            return Err(Error::NonConvergence {
                stage: "orbit integration (step-size collapse)",
                iterations: *steps,
                residual: h,
            });
        }
        let last = t + h >= t1;
        if last {
            h = t1 - t;
        }
        vector_field(sys, &v, mu1, &mut k[0])?;
        for s in 1..7 {
            for i in 0..n {
                let mut acc = v[i];
                for (r, a) in A[s].iter().enumerate().take(s) {
                    acc += h * a * k[r][i];
                }
                tmp[i] = acc;
            }
            let (_, tail) = k.split_at_mut(s);
            vector_field(sys, &tmp, mu1, &mut tail[0])?;
        }
        let mut err: f64 = 0.0;
        let mut new = vec![0.0; n];
        for i in 0..n {
            let mut y5 = v[i];
            let mut e = 0.0;
            for s in 0..7 {
                y5 += h * B5[s] * k[s][i];
                e += h * (B5[s] - B4[s]) * k[s][i];
            }
            new[i] = y5;
            let sc = RK_TOL + RK_TOL * abs(v[i]).max(abs(y5));
            err += (e / sc) * (e / sc);
        }
        err = sqrt(err / n as f64);
        if err <= 1.0 {
            t = if last { t1 } else { t + h };
            v = new;
            *steps += 1;
            let fac = if err == 0.0 {
                5.0
            } else {
                (0.9 * pow(err, -0.2)).clamp(0.2, 5.0)
            };
            if !last {
                *h0 = h * fac;
            }
            h *= fac;
        } else {
            h *= (0.9 * pow(err, -0.2)).clamp(0.1, 1.0);
        }
        if !v.iter().all(|x| x.is_finite()) {
            return Err(Error::NonConvergence {
                stage: "orbit integration",
                iterations: *steps,
                residual: f64::INFINITY,
            });
        }
    }
    Ok(v)
}

/// Integrates the system over one period from `u(0)` and compares with the loop.
pub fn verify_orbit(sys: &HamiltonianSystem, orbit: &OrbitPoint) -> Result<OrbitVerification> {
    let v0 = orbit.u.eval(0.0);
    let e0 = sys.hamiltonian.value(&v0, orbit.mu1);
    let mut v = v0.clone();
    let mut h = orbit.period / 200.0;
    let mut steps = 0;
    let mut energy: f64 = 0.0;
    let mut oracle: f64 = 0.0;
    for s in 1..=ORACLE_SAMPLES {
        let ta = orbit.period * (s - 1) as f64 / ORACLE_SAMPLES as f64;
        let tb = orbit.period * s as f64 / ORACLE_SAMPLES as f64;
        v = integrate(sys, orbit.mu1, &v, ta, tb, &mut h, &mut steps)?;
        energy = energy.max(abs(sys.hamiltonian.value(&v, orbit.mu1) - e0));
        let w = orbit.u.eval(orbit.frequency * tb);
        oracle = oracle.max(
            v.iter()
                .zip(&w)
                .map(|(a, b)| abs(a - b))
                .fold(0.0, f64::max),
        );
    }
    let closure = sqrt(v.iter().zip(&v0).map(|(a, b)| (a - b) * (a - b)).sum());
    Ok(OrbitVerification {
        closure_residual: closure,
        reversibility_residual: orbit.reversibility_residual,
        energy_drift: energy,
        oracle_error: oracle,
        steps,
    })
}
