//! Periodic orbits near a semisimple 1:1 or 1:-1 collision of a reversible
//! Hamiltonian system: Fourier-Galerkin loops, variational reduction to the
//! kernel, solution of the reduced equations and time-domain verification.

mod branch;
mod hyperdual;
mod loops;
mod reduction;
mod system;
mod verify;

pub use branch::{
    assemble_branch, assemble_row, decay_exponents, grid_values, BranchPoint, OrbitBranch,
    OrbitPoint, DEFAULT_EPS, DEFAULT_GRID,
};
pub use hyperdual::HyperDual;
pub use loops::{Collocation, LoopState};
pub use reduction::{
    Galerkin, KernelCoords, RangeSolution, ReducedCoefficients, ReducedSolution, DEFAULT_MODES,
    NEWTON_MAX_ITER, NEWTON_TOL, RICHARDSON_LIMIT,
};
pub use system::{
    canonical_structure, make_test_system, Hamiltonian, HamiltonianDebug, HamiltonianSystem,
    HypothesisReport, Monomial, OneFormFn, PolynomialHamiltonian, Structure, StructureFn,
    TestSystemKind, ZeroChain,
};
pub use verify::{
    integrate, vector_field, verify_orbit, OrbitVerification, ORACLE_SAMPLES, RK_TOL,
};
