use alloc::vec::Vec;

use super::grid::YGrid;
use crate::math::{exp, powi};
use crate::Complex64;

/// One term `coeff * y^power * exp(rate * (y - anchor))`.
///
/// The anchor keeps terms that decay towards the bottom well scaled on deep
/// layers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub coeff: Complex64,
    pub power: u32,
    pub rate: f64,
    pub anchor: f64,
}

impl Term {
    pub fn new(coeff: Complex64, power: u32, rate: f64, anchor: f64) -> Self {
        Self {
            coeff,
            power,
            rate,
            anchor,
        }
    }

    pub fn poly(coeff: f64, power: u32) -> Self {
        Self::new(Complex64::new(coeff, 0.0), power, 0.0, 0.0)
    }

    pub fn eval(&self, y: f64) -> Complex64 {
        if self.coeff == Complex64::new(0.0, 0.0) {
            return self.coeff;
        }
        if y == f64::NEG_INFINITY {
            return Complex64::new(0.0, 0.0);
        }
        let e = if self.rate == 0.0 {
            1.0
        } else {
            exp(self.rate * (y - self.anchor))
        };
        self.coeff * (powi(y, self.power as i32) * e)
    }
}

/// A `y`-profile: closed form or samples on a grid.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    Closed(Vec<Term>),
    Sampled { grid: YGrid, values: Vec<Complex64> },
}

impl Profile {
    pub fn zero() -> Self {
        Profile::Closed(Vec::new())
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Profile::Closed(_))
    }

    /// Value at `y`; for sampled profiles only grid points are available and
    /// `None` is returned elsewhere.
    pub fn value_at(&self, y: f64) -> Option<Complex64> {
        match self {
            Profile::Closed(ts) => Some(ts.iter().map(|t| t.eval(y)).sum()),
            Profile::Sampled { grid, values } => {
                grid.y.iter().position(|&g| g == y).map(|i| values[i])
            }
        }
    }

    pub fn sample(&self, grid: &YGrid) -> Vec<Complex64> {
        match self {
            Profile::Closed(ts) => grid
                .y
                .iter()
                .map(|&y| ts.iter().map(|t| t.eval(y)).sum())
                .collect(),
            Profile::Sampled { grid: own, values } => {
                if own == grid {
                    values.clone()
                } else {
                    grid.y
                        .iter()
                        .map(|y| {
                            own.y
                                .iter()
                                .position(|g| g == y)
                                .map_or(Complex64::new(f64::NAN, 0.0), |i| values[i])
                        })
                        .collect()
                }
            }
        }
    }

    pub fn to_sampled(&self, grid: &YGrid) -> Profile {
        Profile::Sampled {
            grid: grid.clone(),
            values: self.sample(grid),
        }
    }

    pub fn scale(&self, c: Complex64) -> Profile {
        match self {
            Profile::Closed(ts) => Profile::Closed(
                ts.iter()
                    .map(|t| Term {
                        coeff: t.coeff * c,
                        ..*t
                    })
                    .collect(),
            ),
            Profile::Sampled { grid, values } => Profile::Sampled {
                grid: grid.clone(),
                values: values.iter().map(|v| v * c).collect(),
            },
        }
    }

    pub fn conj(&self) -> Profile {
        match self {
            Profile::Closed(ts) => Profile::Closed(
                ts.iter()
                    .map(|t| Term {
                        coeff: t.coeff.conj(),
                        ..*t
                    })
                    .collect(),
            ),
            Profile::Sampled { grid, values } => Profile::Sampled {
                grid: grid.clone(),
                values: values.iter().map(|v| v.conj()).collect(),
            },
        }
    }

    /// `a * self + b * other`; closed if both are closed.
    pub fn combine(&self, a: Complex64, other: &Profile, b: Complex64) -> Profile {
        match (self, other) {
            (Profile::Closed(x), Profile::Closed(y)) => {
                let mut out: Vec<Term> = Vec::with_capacity(x.len() + y.len());
                for t in x
                    .iter()
                    .map(|t| Term {
                        coeff: t.coeff * a,
                        ..*t
                    })
                    .chain(y.iter().map(|t| Term {
                        coeff: t.coeff * b,
                        ..*t
                    }))
                {
                    if let Some(s) = out
                        .iter_mut()
                        .find(|s| s.power == t.power && s.rate == t.rate && s.anchor == t.anchor)
                    {
                        s.coeff += t.coeff;
                    } else {
                        out.push(t);
                    }
                }
                Profile::Closed(out)
            }
            (Profile::Sampled { grid, .. }, _) | (_, Profile::Sampled { grid, .. }) => {
                let u = self.sample(grid);
                let v = other.sample(grid);
                Profile::Sampled {
                    grid: grid.clone(),
                    values: u.iter().zip(&v).map(|(u, v)| u * a + v * b).collect(),
                }
            }
        }
    }

    /// `d/dy`: exact for closed forms, Chebyshev differentiation otherwise.
    pub fn derivative(&self) -> Profile {
        match self {
            Profile::Closed(ts) => {
                let mut out = Vec::with_capacity(2 * ts.len());
                for t in ts {
                    if t.power > 0 {
                        out.push(Term {
                            coeff: t.coeff * t.power as f64,
                            power: t.power - 1,
                            ..*t
                        });
                    }
                    if t.rate != 0.0 {
                        out.push(Term {
                            coeff: t.coeff * t.rate,
                            ..*t
                        });
                    }
                }
                Profile::Closed(out).combine(
                    Complex64::new(1.0, 0.0),
                    &Profile::zero(),
                    Complex64::new(0.0, 0.0),
                )
            }
            Profile::Sampled { grid, values } => Profile::Sampled {
                grid: grid.clone(),
                values: grid.differentiate(values),
            },
        }
    }

    /// Value at the surface `y = 0`.
    pub fn surface(&self) -> Complex64 {
        self.value_at(0.0).unwrap_or(Complex64::new(f64::NAN, 0.0))
    }
}
