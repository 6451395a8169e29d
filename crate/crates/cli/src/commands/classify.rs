use icewave_core::dispersion::{classify_region, FluidParams, RegionClass};
use serde::Serialize;

use crate::error::CliResult;

/// JSON form of a region classification.
#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub beta: f64,
    pub gamma: f64,
    pub region: &'static str,
    pub axis_roots: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub origin_angle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inflections: Option<usize>,
}

impl ClassifyReport {
    pub fn new(params: &FluidParams, class: RegionClass) -> Self {
        Self {
            beta: params.beta,
            gamma: params.gamma,
            region: class.region.name(),
            axis_roots: class.axis_roots,
            origin_angle: class.origin_angle,
            inflections: class.inflections,
        }
    }
}

pub fn classify(beta: f64, gamma: f64) -> CliResult<ClassifyReport> {
    let params = FluidParams::new(beta, gamma)?;
    let class = classify_region(&params)?;
    Ok(ClassifyReport::new(&params, class))
}
