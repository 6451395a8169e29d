use icewave_core::dispersion::{axis_roots, trace_curve, CurveTrace, FluidParams, DEFAULT_A_MAX};
use icewave_core::resonance::curve_radius;

use crate::error::{CliError, CliResult};
use crate::output::{num, Csv};
use crate::svg::trace_svg;

pub const DEFAULT_SAMPLES: usize = 2000;
pub const DEFAULT_A_MIN: f64 = 1e-4;

#[derive(Debug, Clone)]
pub struct TraceOutput {
    pub branches: Vec<CurveTrace>,
    pub axis_roots: Vec<f64>,
    pub csv: String,
    pub svg: String,
}

impl TraceOutput {
    pub fn is_empty(&self) -> bool {
        self.branches.iter().all(|b| b.samples.is_empty())
    }
}

/// Upper end of the default parameter range: just past the outermost axis
/// root, or the library default when the curve is empty.
pub fn default_a_max(params: &FluidParams) -> f64 {
    let r = curve_radius(params);
    if r > 0.0 {
        1.001 * r
    } else {
        DEFAULT_A_MAX
    }
}

pub fn trace(
    beta: f64,
    gamma: f64,
    a_min: Option<f64>,
    a_max: Option<f64>,
    n: usize,
) -> CliResult<TraceOutput> {
    let params = FluidParams::new(beta, gamma)?;
    let a_max = a_max.unwrap_or_else(|| default_a_max(&params));
    let a_min = a_min.unwrap_or(DEFAULT_A_MIN.min(0.5 * a_max));
    if !(a_min < a_max) {
        return Err(CliError::Invalid(format!(
            "a-min {a_min} must be below a-max {a_max}"
        )));
    }
    let branches = trace_curve(&params, a_min, a_max, n)?;
    let roots = axis_roots(&params, a_max.max(DEFAULT_A_MAX));
    let mut csv = Csv::new(&["a", "l1", "l2", "branch"]);
    for b in &branches {
        for s in &b.samples {
            csv.push(vec![
                num(s.a),
                num(s.l1),
                num(s.l2),
                b.branch_id.to_string(),
            ]);
        }
    }
    Ok(TraceOutput {
        svg: trace_svg(&branches, &roots),
        csv: csv.render(),
        branches,
        axis_roots: roots,
    })
}
