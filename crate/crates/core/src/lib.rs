//! Numerics for hydroelastic travelling waves in a three-dimensional
//! periodic geometry, and for the Lyapunov centre theorem at a semisimple
//! 1:1 or 1:-1 resonance of a reversible Hamiltonian system.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised in four layers:
//!
//! * [`dispersion`]: the dispersion relation `D(l1, l2)`, tracing of the
//!   dispersion curve and classification of the `(beta, gamma)` plane.
//! * [`resonance`]: the lines `S_k`, mode-`k` eigenvalue catalogues, Jordan
//!   detection, nonresonance certificates, parameter selection and
//!   transversality of the collision.
//! * [`spectral`]: closed-form eigenvectors, generalized eigenvectors and the
//!   mode-0 chain of the linear operator, checked by applying the operator
//!   row by row.
//! * [`centre`]: a Fourier-Galerkin Lyapunov-Schmidt reduction for
//!   finite-dimensional reversible Hamiltonian systems, producing
//!   two-parameter branches of periodic orbits and verifying them against a
//!   Runge-Kutta integration.
//!
//! ```
//! use icewave_core::dispersion::{classify_region, FluidParams, Region};
//!
//! let params = FluidParams::new(1.0, 10.0).unwrap();
//! let class = classify_region(&params).unwrap();
//! assert_eq!(class.region, Region::AboveD2);
//! ```

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod centre;
pub mod dispersion;
mod error;
pub mod linalg;
mod math;
pub mod resonance;
pub mod roots;
pub mod spectral;

pub use error::{Error, Result};
pub use num_complex::Complex64;
