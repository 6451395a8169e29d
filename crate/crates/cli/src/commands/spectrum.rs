use icewave_core::dispersion::FluidParams;
use icewave_core::resonance::{curve_radius, mode_eigenvalues, ResonanceConfig, WaveGeometry};
use icewave_core::spectral::{
    apply_l_mode, chain_residual, eigen_residual, eigenvector, generalized_eigenvector,
    mode0_chain, YGrid,
};
use icewave_core::Complex64;
use serde::Serialize;

use crate::error::CliResult;
use crate::output::{num, Csv};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRow {
    pub k: i64,
    pub s: f64,
    pub sigma: f64,
    pub b_sign: i8,
    pub chain_length: usize,
    pub mechanism: &'static str,
    pub residual: f64,
    pub chain_residual: Option<f64>,
}

/// Jordan chain of the zero eigenvalue in mode 0.
#[derive(Debug, Clone, Serialize)]
pub struct ZeroChainReport {
    pub length: usize,
    pub essential_spectrum: bool,
    /// `||L f_1||`, then `||L f_j - f_{j-1}||` for `j >= 2`, relative to `||f_j||`.
    pub residuals: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub k: i64,
    pub window: (f64, f64),
    pub eigenvalues: usize,
    pub max_residual: Option<f64>,
    pub max_chain_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_chain: Option<ZeroChainReport>,
    pub rows: Vec<SpectrumRow>,
}

impl SpectrumReport {
    pub fn csv(&self) -> String {
        let mut csv = Csv::new(&[
            "k",
            "s",
            "sigma",
            "b_sign",
            "chain_length",
            "mechanism",
            "residual",
            "chain_residual",
        ]);
        for r in &self.rows {
            csv.push(vec![
                r.k.to_string(),
                num(r.s),
                num(r.sigma),
                r.b_sign.to_string(),
                r.chain_length.to_string(),
                r.mechanism.to_string(),
                num(r.residual),
                r.chain_residual.map_or_else(|| "NaN".into(), num),
            ]);
        }
        csv.render()
    }
}

fn relative(
    f: &icewave_core::spectral::EigenFunction,
    r: &icewave_core::spectral::EigenFunction,
    g: &YGrid,
) -> f64 {
    r.grid_norm(g) / f.grid_norm(g).max(1e-300)
}

/// Largest value, with NaN (a failed evaluation) dominating.
fn worst(it: impl Iterator<Item = f64>) -> Option<f64> {
    it.fold(None, |m, x| match m {
        None => Some(x),
        Some(m) if m.is_nan() || x.is_nan() => Some(f64::NAN),
        Some(m) => Some(m.max(x)),
    })
}

fn zero_chain(
    params: &FluidParams,
    geom: &WaveGeometry,
    grid: &YGrid,
) -> CliResult<ZeroChainReport> {
    if params.is_deep() {
        return Ok(ZeroChainReport {
            length: 0,
            essential_spectrum: true,
            residuals: vec![],
        });
    }
    let chain = mode0_chain(params, geom)?;
    let one = Complex64::new(1.0, 0.0);
    let mut residuals = Vec::with_capacity(chain.len());
    for (j, f) in chain.iter().enumerate() {
        let lf = apply_l_mode(0, f, params, geom)?;
        let r = if j == 0 {
            lf
        } else {
            lf.combine(one, &chain[j - 1], -one)?
        };
        residuals.push(relative(f, &r, grid));
    }
    Ok(ZeroChainReport {
        length: chain.len(),
        essential_spectrum: false,
        residuals,
    })
}

/// Mode-`k` eigenvalues of a configuration with eigenvector residuals.
pub fn spectrum(config: &ResonanceConfig, k: i64, grid_points: usize) -> CliResult<SpectrumReport> {
    let params = &config.params;
    let geom = &config.geom;
    let grid = YGrid::for_params(params, grid_points)?;
    let reach = curve_radius(params) + k.unsigned_abs() as f64 * geom.nu0 + 1.0;
    let window = (-reach, reach);
    let mut rows = Vec::new();
    for e in mode_eigenvalues(k, params, geom, window)? {
        let residual = eigenvector(k, e.s, params, geom)
            .and_then(|v| eigen_residual(&v, I * e.s, params, geom, &grid))
            .unwrap_or(f64::NAN);
        let chain_residual = if e.jordan.chain_length_at_least_2 {
            let r = eigenvector(k, e.s, params, geom).and_then(|v| {
                let w = generalized_eigenvector(k, e.s, params, geom)?;
                chain_residual(&w, &v, I * e.s, params, geom, &grid)
            });
            Some(r.unwrap_or(f64::NAN))
        } else {
            None
        };
        rows.push(SpectrumRow {
            k,
            s: e.s,
            sigma: e.sigma,
            b_sign: e.b_sign,
            chain_length: if e.jordan.chain_length_at_least_2 {
                2
            } else {
                1
            },
            mechanism: e.jordan.mechanism.name(),
            residual,
            chain_residual,
        });
    }
    Ok(SpectrumReport {
        k,
        window,
        eigenvalues: rows.len(),
        max_residual: worst(rows.iter().map(|r| r.residual)),
        max_chain_residual: worst(rows.iter().filter_map(|r| r.chain_residual)),
        zero_chain: if k == 0 {
            Some(zero_chain(params, geom, &grid)?)
        } else {
            None
        },
        rows,
    })
}
