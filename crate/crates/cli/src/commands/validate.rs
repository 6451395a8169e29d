use icewave_core::dispersion::{dispersion_value, FluidParams};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::output::parse_csv;

pub const TRACE_HEADER: [&str; 4] = ["a", "l1", "l2", "branch"];
pub const BRANCH_HEADER: [&str; 10] = [
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
];

/// Bounds applied to converged rows of a branch file.
#[derive(Debug, Clone, Copy)]
pub struct BranchBounds {
    pub closure: f64,
    pub reversibility: f64,
    pub energy: f64,
}

impl Default for BranchBounds {
    fn default() -> Self {
        Self {
            closure: 1e-7,
            reversibility: 1e-10,
            energy: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub row: usize,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub kind: &'static str,
    pub rows: usize,
    pub checked: usize,
    pub max_residual: f64,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    /// `Err` with a certification failure when any row violates a check.
    pub fn into_result(self) -> CliResult<Self> {
        if self.violations.is_empty() {
            return Ok(self);
        }
        let first: Vec<String> = self
            .violations
            .iter()
            .take(5)
            .map(|v| format!("row {}: {}", v.row, v.message))
            .collect();
        Err(CliError::Certification(format!(
            "{} of {} rows violate the {} checks ({})",
            self.violations.len(),
            self.rows,
            self.kind,
            first.join("; ")
        )))
    }
}

fn parse_rows(text: &str, header: &[&str]) -> CliResult<Vec<Vec<String>>> {
    let mut rows = parse_csv(text);
    if rows.is_empty() {
        return Err(CliError::Invalid("file is empty (no header row)".into()));
    }
    let head = rows.remove(0);
    if head != header {
        return Err(CliError::Invalid(format!(
            "unexpected header {head:?}, expected {header:?}"
        )));
    }
    if let Some((i, r)) = rows
        .iter()
        .enumerate()
        .find(|(_, r)| r.len() != header.len())
    {
        return Err(CliError::Invalid(format!(
            "row {} has {} cells, expected {}",
            i + 1,
            r.len(),
            header.len()
        )));
    }
    Ok(rows)
}

fn float(cell: &str, row: usize) -> CliResult<f64> {
    cell.parse()
        .map_err(|_| CliError::Invalid(format!("row {row}: {cell:?} is not a number")))
}

/// Re-checks `a^2 = l1^2 + l2^2` on every row of a trace file and, when the
/// parameters are known, `|D(l1, l2)| <= 1e-10 (1 + (1 + a^4) a)`.
pub fn validate_trace(text: &str, params: Option<&FluidParams>) -> CliResult<ValidationReport> {
    let rows = parse_rows(text, &TRACE_HEADER)?;
    let mut worst: f64 = 0.0;
    let mut violations = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let row = i + 1;
        let (a, l1, l2) = (float(&r[0], row)?, float(&r[1], row)?, float(&r[2], row)?);
        if !(a > 0.0 && l1 >= 0.0 && l2 >= 0.0) {
            violations.push(Violation {
                row,
                message: "expected a > 0, l1 >= 0, l2 >= 0".into(),
            });
            continue;
        }
        let ident = (a * a - l1 * l1 - l2 * l2).abs() / (1.0 + a * a);
        worst = worst.max(ident);
        if ident > 1e-12 {
            violations.push(Violation {
                row,
                message: format!("a^2 - l1^2 - l2^2 = {ident:e}"),
            });
        }
        if let Some(p) = params {
            let d = dispersion_value(l1, l2, p)?.abs() / (1.0 + (1.0 + a.powi(4)) * a);
            worst = worst.max(d);
            if d > 1e-10 {
                violations.push(Violation {
                    row,
                    message: format!("relative D = {d:e}"),
                });
            }
        }
    }
    Ok(ValidationReport {
        kind: "trace",
        rows: rows.len(),
        checked: rows.len(),
        max_residual: worst,
        violations,
    })
}

/// Checks the residual columns of converged rows of a branch file.
pub fn validate_branch(text: &str, bounds: BranchBounds) -> CliResult<ValidationReport> {
    let rows = parse_rows(text, &BRANCH_HEADER)?;
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    let mut violations = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let row = i + 1;
        if r[9] != "converged" {
            continue;
        }
        checked += 1;
        for (col, bound, name) in [
            (6, bounds.closure, "closure_residual"),
            (7, bounds.reversibility, "reversibility_residual"),
            (8, bounds.energy, "energy_drift"),
        ] {
            let v = float(&r[col], row)?;
            worst = worst.max(v);
            if !(v <= bound) {
                violations.push(Violation {
                    row,
                    message: format!("{name} = {v:e} exceeds {bound:e}"),
                });
            }
        }
    }
    Ok(ValidationReport {
        kind: "branch",
        rows: rows.len(),
        checked,
        max_residual: worst,
        violations,
    })
}
