use alloc::vec::Vec;

use super::loops::LoopState;
use super::reduction::{Galerkin, ReducedSolution};
use crate::error::{Error, Result};
use crate::math::{abs, ln, PI};

/// Default half-width of the amplitude grid.
pub const DEFAULT_EPS: f64 = 0.1;
/// Default number of grid values per amplitude.
pub const DEFAULT_GRID: usize = 8;

/// One point of a two-parameter branch.
#[derive(Debug, Clone)]
pub struct BranchPoint {
    pub i: usize,
    pub j: usize,
    pub t1: f64,
    pub t2: f64,
    pub outcome: core::result::Result<OrbitPoint, Error>,
}

/// A converged periodic orbit `v(t) = u((kappa + mu2) t)`.
#[derive(Debug, Clone)]
pub struct OrbitPoint {
    pub u: LoopState,
    pub mu1: f64,
    pub mu2: f64,
    pub p: f64,
    /// Physical period `2 pi / (kappa + mu2)`.
    pub period: f64,
    pub frequency: f64,
    pub reduced_residual: f64,
    pub reversibility_residual: f64,
}

#[derive(Debug, Clone)]
pub struct OrbitBranch {
    pub eps: f64,
    pub grid: usize,
    /// Row-major over `(i, j)` with `t1 = i eps / grid`, `t2 = j eps / grid`.
    pub points: Vec<BranchPoint>,
}

impl OrbitBranch {
    pub fn converged(&self) -> usize {
        self.points.iter().filter(|p| p.outcome.is_ok()).count()
    }

    pub fn converged_fraction(&self) -> f64 {
        if self.points.is_empty() {
            return 0.0;
        }
        self.converged() as f64 / self.points.len() as f64
    }
}

/// Grid values `t_i = i eps / grid`, `i = 0..grid`; a single zero when `eps = 0`.
pub fn grid_values(eps: f64, grid: usize) -> Vec<f64> {
    if eps == 0.0 || grid == 0 {
        return alloc::vec![0.0];
    }
    (0..grid).map(|i| i as f64 * eps / grid as f64).collect()
}

fn orbit_from(g: &Galerkin<'_>, s: &ReducedSolution) -> OrbitPoint {
    let frequency = g.sys.kappa + s.mu2;
    OrbitPoint {
        reversibility_residual: s.u.reversibility_residual(&g.sys.reverser),
        u: s.u.clone(),
        mu1: s.mu1,
        mu2: s.mu2,
        p: s.p,
        period: 2.0 * PI / frequency,
        frequency,
        reduced_residual: s.residual,
    }
}

/// Solves one grid row `t1 = t1`, warm-starting along increasing `t2`.
/// Rows are independent, so they may be solved concurrently with identical results.
pub fn assemble_row(g: &Galerkin<'_>, i: usize, t1: f64, t2s: &[f64]) -> Vec<BranchPoint> {
    let mut prev: Option<ReducedSolution> = None;
    let mut out = Vec::with_capacity(t2s.len());
    for (j, &t2) in t2s.iter().enumerate() {
        let res = g.solve_reduced_from(t1 * t1, t2 * t2, prev.as_ref());
        let res = match (res, &prev) {
            (Err(_), Some(_)) => g.solve_reduced(t1 * t1, t2 * t2),
            (r, _) => r,
        };
        let outcome = res.map(|s| {
            let o = orbit_from(g, &s);
            prev = Some(s);
            o
        });
        if outcome.is_err() {
            prev = None;
        }
        out.push(BranchPoint {
            i,
            j,
            t1,
            t2,
            outcome,
        });
    }
    out
}

/// Assembles the branch over the `grid x grid` amplitude grid.
pub fn assemble_branch(g: &Galerkin<'_>, eps: f64, grid: usize) -> Result<OrbitBranch> {
    if !(eps >= 0.0) || !eps.is_finite() {
        return Err(Error::Domain("eps must be finite and non-negative".into()));
    }
    let ts = grid_values(eps, grid);
    let mut points = Vec::with_capacity(ts.len() * ts.len());
    for (i, &t1) in ts.iter().enumerate() {
        points.extend(assemble_row(g, i, t1, &ts));
    }
    Ok(OrbitBranch {
        eps,
        grid: ts.len(),
        points,
    })
}

/// Least-squares slopes of `log max |mu1|` and `log max |mu2|` against
/// `log t` over the shells `max(i, j) = m`, `m >= 1`.
pub fn decay_exponents(branch: &OrbitBranch) -> Option<(f64, f64)> {
    let n = branch.grid;
    let mut xs = Vec::new();
    let mut y1 = Vec::new();
    let mut y2 = Vec::new();
    for m in 1..n {
        let mut a: f64 = 0.0;
        let mut b: f64 = 0.0;
        let mut t = 0.0;
        for p in &branch.points {
            if p.i.max(p.j) == m {
                if let Ok(o) = &p.outcome {
                    a = a.max(abs(o.mu1));
                    b = b.max(abs(o.mu2));
                    t = if p.i == m { p.t1 } else { p.t2 };
                }
            }
        }
        if a > 0.0 && b > 0.0 && t > 0.0 {
            xs.push(ln(t));
            y1.push(ln(a));
            y2.push(ln(b));
        }
    }
    if xs.len() < 2 {
        return None;
    }
    Some((slope(&xs, &y1), slope(&xs, &y2)))
}

fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}
