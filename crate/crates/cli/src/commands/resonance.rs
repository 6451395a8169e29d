use icewave_core::dispersion::FluidParams;
use icewave_core::resonance::{
    check_nonresonance, config_from_selection, select_parameters, ResonanceConfig, WaveGeometry,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Per-mode certificate data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeMargin {
    pub k: i64,
    pub margin: f64,
    pub roots: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Failure {
    pub k: i64,
    pub s: Option<f64>,
    pub reason: String,
}

/// Resonance configuration with its nonresonance certificate. Written by
/// `resonance` and read back by `spectrum`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResonanceFile {
    pub beta: f64,
    pub s: f64,
    pub nu0: f64,
    pub dtheta: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub gamma: f64,
    pub psi: f64,
    pub kmax: usize,
    pub transversality: Option<f64>,
    pub passed: bool,
    pub k_scanned: usize,
    pub tail_bound: usize,
    pub curve_radius: f64,
    pub margins: Vec<ModeMargin>,
    pub failures: Vec<Failure>,
}

impl ResonanceFile {
    pub fn config(&self) -> CliResult<ResonanceConfig> {
        Ok(ResonanceConfig {
            params: FluidParams::new(self.beta, self.gamma)?,
            geom: WaveGeometry::new(self.theta1, self.theta2, self.nu0)?,
            s: self.s,
            k_checked: self.kmax,
        })
    }
}

/// Selects angles and speed for the given data and certifies the result.
/// The report is returned even when certification fails.
pub fn resonance(
    beta: f64,
    s: f64,
    nu0: f64,
    dtheta: f64,
    kmax: usize,
) -> CliResult<ResonanceFile> {
    let sel = select_parameters(beta, s, nu0, dtheta)?.ok_or_else(|| {
        CliError::Invalid(
            "S_1(s) and S_1(-s) are parallel for this dtheta; no selection exists".into(),
        )
    })?;
    let config = config_from_selection(beta, s, nu0, &sel, kmax)?;
    let cert = check_nonresonance(&config, kmax)?;
    Ok(ResonanceFile {
        beta,
        s,
        nu0,
        dtheta,
        theta1: sel.theta1,
        theta2: sel.theta2,
        gamma: sel.gamma,
        psi: sel.psi,
        kmax,
        transversality: cert.transversality,
        passed: cert.passed,
        k_scanned: cert.k_scanned,
        tail_bound: cert.tail_bound,
        curve_radius: cert.curve_radius,
        margins: cert
            .modes
            .iter()
            .filter(|m| m.k.unsigned_abs() as usize <= kmax)
            .map(|m| ModeMargin {
                k: m.k,
                margin: m.margin,
                roots: m.roots.clone(),
            })
            .collect(),
        failures: cert
            .failures
            .iter()
            .map(|f| Failure {
                k: f.k,
                s: f.s,
                reason: f.reason.to_string(),
            })
            .collect(),
    })
}

/// The certification error for a failed report, listing offending modes.
pub fn certification_error(report: &ResonanceFile) -> Option<CliError> {
    if report.passed {
        return None;
    }
    let mut ks: Vec<i64> = report.failures.iter().map(|f| f.k).collect();
    ks.sort_unstable();
    ks.dedup();
    let list: Vec<String> = ks.iter().map(|k| k.to_string()).collect();
    let detail: Vec<String> = report
        .failures
        .iter()
        .map(|f| match f.s {
            Some(s) => format!("k={} s={s:.12}: {}", f.k, f.reason),
            None => format!("k={}: {}", f.k, f.reason),
        })
        .collect();
    Some(CliError::Certification(format!(
        "offending modes [{}]; {}",
        list.join(", "),
        detail.join("; ")
    )))
}
