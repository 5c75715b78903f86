//! Quantum mechanics of a particle in a box on a (1+1)-dimensional
//! space-time lattice.
//!
//! The spatial domain is a grid of `J0` cells of width `lambda0` with
//! `L = J0 * lambda0`; time advances in steps of `tau0 = lambda0 / c`.
//! Replacing the derivatives of the Schrodinger equation with central
//! differences turns the eigenproblem into a second-order difference
//! equation with closed-form spectrum and eigenfunctions, both of which
//! reduce to the continuum solution as `lambda0 -> 0`.
//!
//! The crate provides:
//!
//! - [`lattice`]: lattice geometry and the discrete inner product
//! - [`continuum`]: exact continuum reference solutions
//! - [`spectrum`]: closed-form lattice eigenvalues and eigenfunctions
//! - [`oracle`]: dense-matrix eigensolver cross-check of the closed forms
//! - [`observables`]: expectation values, uncertainties, and the modified
//!   uncertainty product
//! - [`evolution`]: leapfrog time stepping and its phase accuracy
//! - [`analysis`]: convergence sweeps and power-law order fits
//! - [`report`]: deterministic JSON/CSV emission

pub mod analysis;
pub mod continuum;
pub mod error;
pub mod evolution;
pub mod lattice;
pub mod observables;
pub mod oracle;
pub mod report;
pub mod spectrum;

pub use analysis::{fit_power_law, sweep, ConvergenceSeries, PowerLawFit, Quantity};
pub use continuum::{continuum_eigenfunction, continuum_energy, continuum_uncertainties, ContinuumMode};
pub use error::{QboxError, Result};
pub use evolution::{
    evolve_closed, evolve_recurrence, phase_drift, phase_drift_order, recurrence_residuals,
    time_phase, EvolutionParams,
    PhaseSequence, Seed,
};
pub use lattice::{inner_product, make_lattice, LatticeSpec, PhysicalParams, WaveVector};
pub use observables::{
    expectations, heisenberg_scan, lattice_uncertainties, momentum_apply,
    product_expansion_coefficients, ExpectationSet, ScanReport, UncertaintyReport,
};
pub use oracle::{
    build_hamiltonian, eigendecompose, verify_spectrum, verify_spectrum_with, EigenDecomposition,
    GhostPolicy,
    HamiltonianMatrix, SpectrumReport,
};
pub use spectrum::{
    eigenvalue_equation_residual, gram_matrix, q_eigenfunction, q_energy, q_energy_expansion,
    q_wavenumber_squared, DerivationTrace, Mode,
};
