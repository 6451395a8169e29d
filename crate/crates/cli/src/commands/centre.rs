use std::path::{Path, PathBuf};

use icewave_core::centre::{
    assemble_row, decay_exponents, grid_values, verify_orbit, BranchPoint, Galerkin,
    HamiltonianSystem, OrbitBranch, OrbitVerification, ReducedCoefficients,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::output::{json, num, write_file, Csv};

/// Largest residual tolerated in the hypothesis checks.
pub const HYPOTHESIS_TOL: f64 = 1e-8;
/// Fraction of grid points that must converge for a successful run.
pub const MIN_CONVERGED: f64 = 0.9;

#[derive(Debug, Clone)]
pub struct CentreOptions {
    pub n_modes: usize,
    pub eps: f64,
    pub grid: usize,
    pub parallelism: usize,
}

/// A branch point with its time-domain verification.
#[derive(Debug, Clone)]
pub struct VerifiedPoint {
    pub point: BranchPoint,
    pub verification: Option<Result<OrbitVerification, String>>,
}

impl VerifiedPoint {
    pub fn status(&self) -> &'static str {
        match (&self.point.outcome, &self.verification) {
            (Err(_), _) => "solve_failed",
            (Ok(_), Some(Ok(_))) => "converged",
            (Ok(_), _) => "verify_failed",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CoefficientReport {
    pub system: String,
    pub kappa: f64,
    pub n_modes: usize,
    pub signs: [i8; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s002_00: Option<f64>,
    pub s200_10: f64,
    pub s020_10: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s002_10: Option<f64>,
    pub s200_01: f64,
    pub s020_01: f64,
    pub richardson_gap: f64,
    pub reduced_determinant: f64,
    pub decay_exponents: Option<[f64; 2]>,
    pub eps: f64,
    pub grid: usize,
    pub points: usize,
    pub converged: usize,
    pub verified: usize,
}

#[derive(Debug, Clone)]
pub struct CentreRun {
    pub branch: OrbitBranch,
    pub points: Vec<VerifiedPoint>,
    pub coefficients: ReducedCoefficients,
    pub report: CoefficientReport,
}

impl CentreRun {
    pub fn branch_csv(&self) -> String {
        let mut csv = Csv::new(&[
            "t1",
            "t2",
            "mu1",
            "mu2",
            "p",
            "period",
            "closure_residual",
            "reversibility_residual",
            "energy_drift",
            "status",
        ]);
        for vp in &self.points {
            let p = &vp.point;
            let ver = vp.verification.as_ref().and_then(|v| v.as_ref().ok());
            let (mu1, mu2, pp, period, rev) = match &p.outcome {
                Ok(o) => (o.mu1, o.mu2, o.p, o.period, o.reversibility_residual),
                Err(_) => (f64::NAN, f64::NAN, f64::NAN, f64::NAN, f64::NAN),
            };
            csv.push(vec![
                num(p.t1),
                num(p.t2),
                num(mu1),
                num(mu2),
                num(pp),
                num(period),
                num(ver.map_or(f64::NAN, |v| v.closure_residual)),
                num(rev),
                num(ver.map_or(f64::NAN, |v| v.energy_drift)),
                vp.status().to_string(),
            ]);
        }
        csv.render()
    }

    pub fn verification_csv(&self) -> String {
        let mut csv = Csv::new(&[
            "t1",
            "t2",
            "closure_residual",
            "reversibility_residual",
            "energy_drift",
            "oracle_error",
            "steps",
            "status",
        ]);
        for vp in &self.points {
            let p = &vp.point;
            let (vals, steps, status) = match &vp.verification {
                Some(Ok(v)) => (
                    [
                        v.closure_residual,
                        v.reversibility_residual,
                        v.energy_drift,
                        v.oracle_error,
                    ],
                    v.steps.to_string(),
                    "ok".to_string(),
                ),
                Some(Err(e)) => ([f64::NAN; 4], "0".into(), format!("error: {e}")),
                None => ([f64::NAN; 4], "0".into(), "not_solved".into()),
            };
            let mut row = vec![num(p.t1), num(p.t2)];
            row.extend(vals.iter().map(|v| num(*v)));
            row.push(steps);
            row.push(status);
            csv.push(row);
        }
        csv.render()
    }

    pub fn converged_fraction(&self) -> f64 {
        self.branch.converged_fraction()
    }
}

fn pool(parallelism: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism.max(1))
        .build()
        .map_err(|e| CliError::Invalid(format!("cannot create thread pool: {e}")))
}

/// Checks the hypotheses, extracts the reduced coefficients, solves the
/// branch row by row in parallel and verifies every converged point.
pub fn run_centre(sys: &HamiltonianSystem, opts: &CentreOptions) -> CliResult<CentreRun> {
    if !(opts.eps >= 0.0 && opts.eps.is_finite()) {
        return Err(CliError::Invalid(
            "eps must be finite and non-negative".into(),
        ));
    }
    if opts.n_modes < 2 {
        return Err(CliError::Invalid(
            "at least two Fourier modes are needed".into(),
        ));
    }
    let hyp = sys.check_hypotheses()?;
    if !hyp.holds(HYPOTHESIS_TOL) {
        return Err(CliError::Invalid(format!(
            "system {} violates the hypotheses: {hyp:?}",
            sys.name
        )));
    }
    let g = Galerkin::new(sys, opts.n_modes)?;
    let coefficients = g.extract_coefficients()?;
    let (_, det) = g.reduced_model()?;
    let ts = grid_values(opts.eps, opts.grid);
    let pool = pool(opts.parallelism)?;
    let (rows, verification): (
        Vec<Vec<BranchPoint>>,
        Vec<Option<Result<OrbitVerification, String>>>,
    ) = pool.install(|| {
        let rows: Vec<Vec<BranchPoint>> = ts
            .par_iter()
            .enumerate()
            .map(|(i, &t1)| assemble_row(&g, i, t1, &ts))
            .collect();
        let ver = rows
            .par_iter()
            .flatten()
            .map(|p| {
                p.outcome
                    .as_ref()
                    .ok()
                    .map(|o| verify_orbit(sys, o).map_err(|e| e.to_string()))
            })
            .collect();
        (rows, ver)
    });
    let points: Vec<BranchPoint> = rows.into_iter().flatten().collect();
    let branch = OrbitBranch {
        eps: opts.eps,
        grid: ts.len(),
        points: points.clone(),
    };
    let decay = decay_exponents(&branch).map(|(a, b)| [a, b]);
    let points: Vec<VerifiedPoint> = points
        .into_iter()
        .zip(verification)
        .map(|(point, verification)| VerifiedPoint {
            point,
            verification,
        })
        .collect();
    let report = CoefficientReport {
        system: sys.name.clone(),
        kappa: sys.kappa,
        n_modes: opts.n_modes,
        signs: sys.signs,
        s002_00: coefficients.s002_00,
        s200_10: coefficients.s200_10,
        s020_10: coefficients.s020_10,
        s002_10: coefficients.s002_10,
        s200_01: coefficients.s200_01,
        s020_01: coefficients.s020_01,
        richardson_gap: coefficients.richardson_gap,
        reduced_determinant: det,
        decay_exponents: decay,
        eps: opts.eps,
        grid: ts.len(),
        points: points.len(),
        converged: branch.converged(),
        verified: points.iter().filter(|p| p.status() == "converged").count(),
    };
    Ok(CentreRun {
        branch,
        points,
        coefficients,
        report,
    })
}

/// Writes `branch.csv`, `verification.csv` and `coefficients.json` into `dir`.
pub fn write_outputs(run: &CentreRun, dir: &Path) -> CliResult<Vec<PathBuf>> {
    let files = [
        ("branch.csv", run.branch_csv()),
        ("verification.csv", run.verification_csv()),
        ("coefficients.json", json(&run.report)?),
    ];
    let mut out = Vec::new();
    for (name, contents) in files {
        let path = dir.join(name);
        write_file(&path, &contents)?;
        out.push(path);
    }
    Ok(out)
}

/// Exit status for a finished run.
pub fn check_converged(run: &CentreRun) -> CliResult<()> {
    let f = run.converged_fraction();
    if f + 1e-12 < MIN_CONVERGED {
        return Err(CliError::NonConvergence(format!(
            "only {}/{} branch points converged",
            run.report.converged, run.report.points
        )));
    }
    Ok(())
}
