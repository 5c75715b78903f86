//! Physical parameters, lattice geometry, and the discrete inner product.
//!
//! Positions are integer multiples of the lattice parameter, `x_j = j * lambda0`
//! with `j = 0..=J0` and `L = J0 * lambda0`. The time step is tied to the
//! spatial spacing by `tau0 = lambda0 / c`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{QboxError, Result};

/// Physical constants of the problem. Defaults to natural box units
/// `hbar = m = c = L = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalParams {
    pub hbar: f64,
    pub mass: f64,
    pub box_length: f64,
    pub light_speed: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            mass: 1.0,
            box_length: 1.0,
            light_speed: 1.0,
        }
    }
}

impl PhysicalParams {
    pub fn new(hbar: f64, mass: f64, box_length: f64, light_speed: f64) -> Result<Self> {
        let p = Self {
            hbar,
            mass,
            box_length,
            light_speed,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("hbar", self.hbar),
            ("mass", self.mass),
            ("box_length", self.box_length),
            ("light_speed", self.light_speed),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(QboxError::InvalidParam(format!(
                    "{name} must be strictly positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// The discretized domain: `J0` cells of width `lambda0` spanning the box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticeSpec {
    pub params: PhysicalParams,
    /// Number of cells; sites run j = 0..=J0 inclusive.
    pub j0: usize,
    /// Lattice parameter, lambda0 = L / J0.
    pub lambda0: f64,
    /// Time step, tau0 = lambda0 / c.
    pub tau0: f64,
}

/// Build a lattice with `J0` cells. Rejects `J0 < 2` (no interior site).
pub fn make_lattice(params: PhysicalParams, j0: usize) -> Result<LatticeSpec> {
    params.validate()?;
    if j0 < 2 {
        return Err(QboxError::NoInteriorSites(j0));
    }
    let lambda0 = params.box_length / j0 as f64;
    let tau0 = lambda0 / params.light_speed;
    Ok(LatticeSpec {
        params,
        j0,
        lambda0,
        tau0,
    })
}

impl LatticeSpec {
    /// Number of stored samples, sites j = 0..=J0.
    pub fn num_sites(&self) -> usize {
        self.j0 + 1
    }

    /// Number of independent interior modes, n = 1..=J0-1.
    pub fn num_modes(&self) -> usize {
        self.j0 - 1
    }

    /// Position of site j.
    pub fn site(&self, j: usize) -> f64 {
        j as f64 * self.lambda0
    }
}

/// A wavefunction sampled on the lattice sites, entry j = value at `j * lambda0`.
///
/// Eigenmodes carry zeros at both endpoints; derived quantities such as the
/// discretized momentum applied to a mode generally do not.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveVector {
    pub values: Vec<Complex64>,
}

impl WaveVector {
    pub fn new(values: Vec<Complex64>) -> Self {
        Self { values }
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self {
            values: values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            values: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// True when both endpoints vanish, as required of eigenmodes.
    pub fn satisfies_boundary(&self) -> bool {
        match (self.values.first(), self.values.last()) {
            (Some(a), Some(b)) => a.norm() == 0.0 && b.norm() == 0.0,
            _ => false,
        }
    }
}

/// Discrete inner product `lambda0 * sum_j conj(f_j) g_j`.
///
/// The measure weight `lambda0` makes the normalized eigenmodes carry the
/// continuum normalization `|A| = sqrt(2/L)` and turns the sum into a
/// Riemann approximant of the continuum integral.
pub fn inner_product(f: &WaveVector, g: &WaveVector, lat: &LatticeSpec) -> Result<Complex64> {
    if f.len() != g.len() {
        return Err(QboxError::LengthMismatch(f.len(), g.len()));
    }
    let sum: Complex64 = f
        .values
        .iter()
        .zip(&g.values)
        .map(|(a, b)| a.conj() * b)
        .sum();
    Ok(sum * lat.lambda0)
}
