//! Exact continuum solutions of the particle in a box, the target of the
//! lattice results in the limit `lambda0 -> 0`.

use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{QboxError, Result};
use crate::lattice::PhysicalParams;
use crate::observables::UncertaintyReport;

/// One continuum eigenstate `u_n(x) = sqrt(2/L) sin(n pi x / L)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ContinuumMode {
    pub n: usize,
    /// Wavenumber k = n pi / L.
    pub k: f64,
    /// Energy hbar^2 k^2 / (2 m).
    pub energy: f64,
    /// Normalization constant sqrt(2/L).
    pub norm_a: f64,
}

fn check_n(n: usize) -> Result<()> {
    if n < 1 {
        return Err(QboxError::ModeOutOfRange { n, max: usize::MAX });
    }
    Ok(())
}

pub fn continuum_mode(n: usize, params: &PhysicalParams) -> Result<ContinuumMode> {
    check_n(n)?;
    let l = params.box_length;
    let k = n as f64 * PI / l;
    Ok(ContinuumMode {
        n,
        k,
        energy: params.hbar * params.hbar * k * k / (2.0 * params.mass),
        norm_a: (2.0 / l).sqrt(),
    })
}

/// Energy eigenvalue `E_n = hbar^2 pi^2 n^2 / (2 m L^2)`.
pub fn continuum_energy(n: usize, params: &PhysicalParams) -> Result<f64> {
    Ok(continuum_mode(n, params)?.energy)
}

/// Eigenfunction `sqrt(2/L) sin(n pi x / L)` for `0 <= x <= L`.
pub fn continuum_eigenfunction(n: usize, x: f64, params: &PhysicalParams) -> Result<f64> {
    check_n(n)?;
    let l = params.box_length;
    if !(0.0..=l).contains(&x) {
        return Err(QboxError::InvalidParam(format!(
            "x = {x} outside the box [0, {l}]"
        )));
    }
    // the boundary condition pins exact zeros at the walls; don't let
    // sin(n pi) rounding leak in
    if x == 0.0 || x == l {
        return Ok(0.0);
    }
    Ok((2.0 / l).sqrt() * (n as f64 * PI * x / l).sin())
}

/// Mean position, `L/2` for every mode.
pub fn continuum_x_mean(params: &PhysicalParams) -> f64 {
    params.box_length / 2.0
}

/// Mean squared position, `L^2 (1/3 - 1/(2 n^2 pi^2))`.
pub fn continuum_x2_mean(n: usize, params: &PhysicalParams) -> Result<f64> {
    check_n(n)?;
    let l = params.box_length;
    let npi = n as f64 * PI;
    Ok(l * l * (1.0 / 3.0 - 1.0 / (2.0 * npi * npi)))
}

/// Continuum uncertainties: `dx = sqrt((n^2 pi^2 - 6)/3) L/(2 n pi)`,
/// `dp = n pi hbar / L`, product `sqrt((n^2 pi^2 - 6)/3) hbar/2 >= hbar/2`.
pub fn continuum_uncertainties(n: usize, params: &PhysicalParams) -> Result<UncertaintyReport> {
    check_n(n)?;
    let l = params.box_length;
    let hbar = params.hbar;
    let npi = n as f64 * PI;
    let alpha = ((npi * npi - 6.0) / 3.0).sqrt();
    let delta_x = alpha * l / (2.0 * npi);
    let delta_p = npi * hbar / l;
    let product = alpha * hbar / 2.0;
    Ok(UncertaintyReport {
        n,
        delta_x,
        delta_p,
        product,
        product_over_hbar_half: alpha,
        alpha,
        beta: -npi * npi / (6.0 * l * l),
        continuum_product: product,
    })
}
