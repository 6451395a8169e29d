use std::collections::BTreeMap;
use std::path::PathBuf;

use icewave_core::centre::{verify_orbit, Galerkin, DEFAULT_MODES};
use icewave_core::dispersion::{classify_region, dispersion_value, trace_curve, FluidParams};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::resonance::resonance;
use super::trace::{default_a_max, DEFAULT_A_MIN, DEFAULT_SAMPLES};
use crate::error::{CliError, CliResult};
use crate::output::{num, opt_num, Csv};
use crate::system_file::load_system;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Classify,
    Dispersion,
    Resonance,
    Centre,
}

impl Target {
    fn name(&self) -> &'static str {
        match self {
            Target::Classify => "classify",
            Target::Dispersion => "dispersion",
            Target::Resonance => "resonance",
            Target::Centre => "centre",
        }
    }

    /// Required and optional parameter names.
    fn parameters(&self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            Target::Classify => (&["beta", "gamma"], &[]),
            Target::Dispersion => (&["beta", "gamma"], &["a_min", "a_max", "n"]),
            Target::Resonance => (&["beta", "s", "nu0", "dtheta"], &["kmax"]),
            Target::Centre => (&["t1", "t2"], &["kappa", "coupling", "n_modes"]),
        }
    }

    fn columns(&self) -> &'static [&'static str] {
        match self {
            Target::Classify => &[
                "region",
                "n_axis_roots",
                "largest_axis_root",
                "origin_angle",
                "inflections",
            ],
            Target::Dispersion => &[
                "branches",
                "samples",
                "max_trace_residual",
                "max_identity_residual",
            ],
            Target::Resonance => &[
                "theta1",
                "theta2",
                "gamma",
                "psi",
                "transversality",
                "passed",
                "failures",
            ],
            Target::Centre => &[
                "mu1",
                "mu2",
                "p",
                "period",
                "closure_residual",
                "reversibility_residual",
                "energy_drift",
                "oracle_error",
            ],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

/// One scanned parameter: explicit `values`, or `count` points from `start`
/// to `stop` inclusive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub name: String,
    #[serde(default)]
    pub values: Option<Vec<f64>>,
    #[serde(default)]
    pub start: Option<f64>,
    #[serde(default)]
    pub stop: Option<f64>,
    #[serde(default)]
    pub count: Option<usize>,
    #[serde(default)]
    pub spacing: Spacing,
}

impl Axis {
    pub fn points(&self) -> CliResult<Vec<f64>> {
        let bad = |m: &str| CliError::Invalid(format!("axis {}: {m}", self.name));
        let pts = match (&self.values, self.start, self.stop, self.count) {
            (Some(v), None, None, None) => v.clone(),
            (None, Some(a), Some(b), Some(n)) => {
                if n == 0 {
                    return Err(bad("count must be positive"));
                }
                if n == 1 {
                    vec![a]
                } else {
                    match self.spacing {
                        Spacing::Linear => (0..n)
                            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
                            .collect(),
                        Spacing::Log => {
                            if !(a > 0.0 && b > 0.0) {
                                return Err(bad("log spacing needs positive bounds"));
                            }
                            let (la, lb) = (a.ln(), b.ln());
                            let mut v: Vec<f64> = (0..n)
                                .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
                                .collect();
                            v[0] = a;
                            v[n - 1] = b;
                            v
                        }
                    }
                }
            }
            _ => return Err(bad("give either values, or start, stop and count")),
        };
        if pts.is_empty() {
            return Err(bad("grid is empty"));
        }
        if pts.iter().any(|x| !x.is_finite()) {
            return Err(bad("values must be finite"));
        }
        Ok(pts)
    }
}

fn default_trace_residual() -> f64 {
    1e-10
}

fn default_closure() -> f64 {
    1e-7
}

/// Thresholds that turn a computed row into status `tolerance_exceeded`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Bound on `|D| / (1 + (1 + a^4) a)` over traced samples.
    #[serde(default = "default_trace_residual")]
    pub trace_residual: f64,
    /// Bound on the integrated closure residual of a branch point.
    #[serde(default = "default_closure")]
    pub closure: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            trace_residual: default_trace_residual(),
            closure: default_closure(),
        }
    }
}

fn default_parallelism() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    pub target: Target,
    /// Scanned parameters; rows run lexicographically with the first axis outermost.
    pub axes: Vec<Axis>,
    #[serde(default)]
    pub fixed: BTreeMap<String, f64>,
    /// Builtin name or system file for the `centre` target.
    #[serde(default)]
    pub system: Option<String>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default = "default_parallelism")]
    pub parallelism: usize,
}

#[derive(Debug, Clone)]
pub struct ScanResult {
    pub csv: String,
    pub rows: usize,
    pub failed: usize,
}

struct Plan {
    names: Vec<String>,
    grids: Vec<Vec<f64>>,
}

impl ScanConfig {
    fn plan(&self) -> CliResult<Plan> {
        if self.axes.is_empty() {
            return Err(CliError::Invalid("at least one axis is required".into()));
        }
        if self.parallelism == 0 {
            return Err(CliError::Invalid("parallelism must be at least 1".into()));
        }
        if self.system.is_some() && self.target != Target::Centre {
            return Err(CliError::Invalid(
                "system is only used by the centre target".into(),
            ));
        }
        let (required, optional) = self.target.parameters();
        let mut seen: Vec<&str> = Vec::new();
        for name in self
            .axes
            .iter()
            .map(|a| a.name.as_str())
            .chain(self.fixed.keys().map(String::as_str))
        {
            if !required.contains(&name) && !optional.contains(&name) {
                return Err(CliError::Invalid(format!(
                    "unknown parameter {name:?} for target {}",
                    self.target.name()
                )));
            }
            if seen.contains(&name) {
                return Err(CliError::Invalid(format!("parameter {name:?} given twice")));
            }
            seen.push(name);
        }
        if let Some(missing) = required.iter().find(|r| !seen.contains(r)) {
            return Err(CliError::Invalid(format!(
                "parameter {missing:?} is required for target {}",
                self.target.name()
            )));
        }
        let grids = self
            .axes
            .iter()
            .map(Axis::points)
            .collect::<CliResult<Vec<_>>>()?;
        Ok(Plan {
            names: self.axes.iter().map(|a| a.name.clone()).collect(),
            grids,
        })
    }
}

/// Parameter values of row `index` in lexicographic order.
fn row_values(grids: &[Vec<f64>], mut index: usize) -> Vec<f64> {
    let mut out = vec![0.0; grids.len()];
    for (slot, g) in out.iter_mut().zip(grids).rev() {
        *slot = g[index % g.len()];
        index /= g.len();
    }
    out
}

fn count(x: f64, name: &str) -> Result<usize, String> {
    if x >= 0.0 && x.fract() == 0.0 && x <= 1e9 {
        Ok(x as usize)
    } else {
        Err(format!("{name} must be a non-negative integer"))
    }
}

type RowOutcome = Result<(Vec<String>, bool), String>;

fn evaluate(cfg: &ScanConfig, p: &BTreeMap<&str, f64>) -> RowOutcome {
    let get = |k: &str| p[k];
    let opt = |k: &str| p.get(k).copied();
    match cfg.target {
        Target::Classify => {
            let params = FluidParams::new(get("beta"), get("gamma")).map_err(|e| e.to_string())?;
            let c = classify_region(&params).map_err(|e| e.to_string())?;
            Ok((
                vec![
                    c.region.name().to_string(),
                    c.axis_roots.len().to_string(),
                    opt_num(c.axis_roots.last().copied()),
                    opt_num(c.origin_angle),
                    c.inflections
                        .map_or_else(|| "NaN".into(), |n| n.to_string()),
                ],
                true,
            ))
        }
        Target::Dispersion => {
            let params = FluidParams::new(get("beta"), get("gamma")).map_err(|e| e.to_string())?;
            let a_max = opt("a_max").unwrap_or_else(|| default_a_max(&params));
            let a_min = opt("a_min").unwrap_or(DEFAULT_A_MIN.min(0.5 * a_max));
            let n = match opt("n") {
                Some(x) => count(x, "n")?,
                None => DEFAULT_SAMPLES,
            };
            let branches = trace_curve(&params, a_min, a_max, n).map_err(|e| e.to_string())?;
            let mut samples = 0;
            let mut res: f64 = 0.0;
            let mut ident: f64 = 0.0;
            for s in branches.iter().flat_map(|b| &b.samples) {
                samples += 1;
                let d = dispersion_value(s.l1, s.l2, &params).map_err(|e| e.to_string())?;
                res = res.max(d.abs() / (1.0 + (1.0 + s.a.powi(4)) * s.a));
                ident =
                    ident.max((s.l1 * s.l1 + s.l2 * s.l2 - s.a * s.a).abs() / (1.0 + s.a * s.a));
            }
            Ok((
                vec![
                    branches.len().to_string(),
                    samples.to_string(),
                    num(res),
                    num(ident),
                ],
                res <= cfg.tolerances.trace_residual,
            ))
        }
        Target::Resonance => {
            let kmax = match opt("kmax") {
                Some(x) => count(x, "kmax")?,
                None => 4,
            };
            let r = resonance(get("beta"), get("s"), get("nu0"), get("dtheta"), kmax)
                .map_err(|e| e.to_string())?;
            Ok((
                vec![
                    num(r.theta1),
                    num(r.theta2),
                    num(r.gamma),
                    num(r.psi),
                    opt_num(r.transversality),
                    r.passed.to_string(),
                    r.failures.len().to_string(),
                ],
                true,
            ))
        }
        Target::Centre => {
            let n_modes = match opt("n_modes") {
                Some(x) => count(x, "n_modes")?,
                None => DEFAULT_MODES,
            };
            let name = cfg.system.as_deref().unwrap_or("BASIC_4D");
            let sys = load_system(
                name,
                opt("kappa").unwrap_or(1.0),
                opt("coupling").unwrap_or(1.0),
            )
            .map_err(|e| e.to_string())?;
            let g = Galerkin::new(&sys, n_modes).map_err(|e| e.to_string())?;
            let (t1, t2) = (get("t1"), get("t2"));
            let sol = g
                .solve_reduced(t1 * t1, t2 * t2)
                .map_err(|e| e.to_string())?;
            let frequency = sys.kappa + sol.mu2;
            let orbit = icewave_core::centre::OrbitPoint {
                reversibility_residual: sol.u.reversibility_residual(&sys.reverser),
                u: sol.u,
                mu1: sol.mu1,
                mu2: sol.mu2,
                p: sol.p,
                period: 2.0 * std::f64::consts::PI / frequency,
                frequency,
                reduced_residual: sol.residual,
            };
            let v = verify_orbit(&sys, &orbit).map_err(|e| e.to_string())?;
            Ok((
                vec![
                    num(orbit.mu1),
                    num(orbit.mu2),
                    num(orbit.p),
                    num(orbit.period),
                    num(v.closure_residual),
                    num(v.reversibility_residual),
                    num(v.energy_drift),
                    num(v.oracle_error),
                ],
                v.closure_residual <= cfg.tolerances.closure,
            ))
        }
    }
}

/// Evaluates the target on every grid row with at most `parallelism`
/// concurrent evaluations. Rows are written in lexicographic order, so the
/// output does not depend on scheduling.
pub fn run_scan(cfg: &ScanConfig) -> CliResult<ScanResult> {
    let plan = cfg.plan()?;
    let total: usize = plan.grids.iter().map(Vec::len).product();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .map_err(|e| CliError::Invalid(format!("cannot create thread pool: {e}")))?;
    let outcomes: Vec<(Vec<f64>, RowOutcome)> = pool.install(|| {
        (0..total)
            .into_par_iter()
            .map(|idx| {
                let vals = row_values(&plan.grids, idx);
                let mut p: BTreeMap<&str, f64> =
                    cfg.fixed.iter().map(|(k, v)| (k.as_str(), *v)).collect();
                for (n, v) in plan.names.iter().zip(&vals) {
                    p.insert(n.as_str(), *v);
                }
                let out = evaluate(cfg, &p);
                (vals, out)
            })
            .collect()
    });
    let cols = cfg.target.columns();
    let mut header: Vec<&str> = plan.names.iter().map(String::as_str).collect();
    header.extend_from_slice(cols);
    header.push("status");
    let mut csv = Csv::new(&header);
    let mut failed = 0;
    for (vals, out) in outcomes {
        let mut row: Vec<String> = vals.iter().map(|v| num(*v)).collect();
        match out {
            Ok((cells, within)) => {
                row.extend(cells);
                row.push(if within { "ok" } else { "tolerance_exceeded" }.to_string());
            }
            Err(e) => {
                failed += 1;
                row.extend(cols.iter().map(|_| "NaN".to_string()));
                row.push(format!("error: {e}"));
            }
        }
        csv.push(row);
    }
    Ok(ScanResult {
        csv: csv.render(),
        rows: total,
        failed,
    })
}
