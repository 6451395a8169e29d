use std::path::Path;

use icewave_core::centre::{
    make_test_system, HamiltonianSystem, Monomial, PolynomialHamiltonian, Structure,
    TestSystemKind, ZeroChain,
};
use icewave_core::linalg::Matrix;
use icewave_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::output::read_file;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialSpec {
    pub exponents: Vec<u32>,
    pub coeff: f64,
    #[serde(default)]
    pub mu_degree: u32,
}

/// Declarative polynomial system: `H = sum coeff mu1^mu_degree x^exponents`
/// with constant `J`, reverser `R` and eigendata. Complex vectors are lists
/// of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    #[serde(default)]
    pub name: Option<String>,
    pub dim: usize,
    pub monomials: Vec<MonomialSpec>,
    #[serde(rename = "J")]
    pub j: Vec<Vec<f64>>,
    #[serde(rename = "R")]
    pub r: Vec<Vec<f64>>,
    pub kappa: f64,
    pub e1: Vec<[f64; 2]>,
    pub e2: Vec<[f64; 2]>,
    #[serde(default)]
    pub f1: Option<Vec<f64>>,
    #[serde(default)]
    pub f2: Option<Vec<f64>>,
}

fn matrix(name: &str, rows: &[Vec<f64>], dim: usize) -> CliResult<Matrix> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(CliError::Invalid(format!(
            "{name} must be a {dim}x{dim} matrix"
        )));
    }
    let refs: Vec<&[f64]> = rows.iter().map(Vec::as_slice).collect();
    Ok(Matrix::from_rows(&refs))
}

fn cvec(v: &[[f64; 2]]) -> Vec<Complex64> {
    v.iter().map(|[a, b]| Complex64::new(*a, *b)).collect()
}

impl SystemFile {
    pub fn build(&self) -> CliResult<HamiltonianSystem> {
        let monomials = self
            .monomials
            .iter()
            .map(|m| Monomial {
                exponents: m.exponents.clone(),
                coeff: m.coeff,
                mu_degree: m.mu_degree,
            })
            .collect();
        let ham = PolynomialHamiltonian::new(self.dim, monomials)?;
        let j = matrix("J", &self.j, self.dim)?;
        let r = matrix("R", &self.r, self.dim)?;
        let chain = match (&self.f1, &self.f2) {
            (Some(f1), Some(f2)) => Some(ZeroChain {
                f1: f1.clone(),
                f2: f2.clone(),
            }),
            (None, None) => None,
            _ => return Err(CliError::Invalid("f1 and f2 must be given together".into())),
        };
        Ok(HamiltonianSystem::new(
            self.name.clone().unwrap_or_else(|| "custom".into()),
            Box::new(ham),
            Structure::Constant(j),
            r,
            self.kappa,
            cvec(&self.e1),
            cvec(&self.e2),
            chain,
        )?)
    }
}

/// A builtin name (`BASIC_4D`, `BASIC_4D_OPPOSITE`, `TRANSLATION_6D`) or a
/// path to a system file. `kappa` and `coupling` apply to builtins only.
pub fn load_system(spec: &str, kappa: f64, coupling: f64) -> CliResult<HamiltonianSystem> {
    if let Some(kind) = TestSystemKind::parse(spec) {
        return Ok(make_test_system(kind, kappa, coupling)?);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(CliError::Invalid(format!(
            "unknown system {spec:?}: not a builtin (BASIC_4D, BASIC_4D_OPPOSITE, TRANSLATION_6D) or an existing file"
        )));
    }
    let file: SystemFile = serde_json::from_str(&read_file(path)?)?;
    file.build()
}
