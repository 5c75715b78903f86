//! Convergence sweeps over the lattice spacing and power-law fits of the
//! resulting deviations from the continuum.

use rayon::prelude::*;
use serde::Serialize;

use crate::continuum;
use crate::error::{QboxError, Result};
use crate::evolution;
use crate::lattice::{make_lattice, PhysicalParams};
use crate::observables::{lattice_uncertainties, product_expansion_coefficients};
use crate::spectrum::q_energy;

/// Which deviation a sweep tracks as `lambda0 -> 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// `E_n - E^q_n`, second order with coefficient `pi^4 hbar^2 n^4 / (6 m L^4)`.
    EnergyError,
    /// Continuum minus lattice `dp`, second order.
    DeltaPError,
    /// Continuum minus lattice `dx^2`, fourth order.
    DeltaX2Error,
    /// `1 - product / (alpha hbar/2)`, second order with coefficient `|beta|`.
    ProductRelCorrection,
    /// Accumulated phase drift of the time sector over a fixed duration.
    PhaseDrift,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub coefficient: f64,
    pub r_squared: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepPoint {
    #[serde(rename = "J0")]
    pub j0: usize,
    pub lambda0: f64,
    pub value: f64,
}

/// A convergence series with its power-law fit. `initial_fit` uses every
/// point; `fit` may exclude up to `dropped_coarse` of the coarsest lattices
/// where higher-order terms contaminate the leading power law.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceSeries {
    pub quantity: Quantity,
    pub n: usize,
    /// Sorted by decreasing lambda0.
    pub points: Vec<SweepPoint>,
    pub initial_fit: PowerLawFit,
    pub fit: PowerLawFit,
    pub dropped_coarse: usize,
}

impl ConvergenceSeries {
    pub fn fitted_exponent(&self) -> f64 {
        self.fit.exponent
    }

    pub fn fitted_coefficient(&self) -> f64 {
        self.fit.coefficient
    }
}

/// Ordinary least squares on `(log lambda0, log value)`.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    if points.len() < 3 {
        return Err(QboxError::TooFewPoints(points.len()));
    }
    for &(lam, v) in points {
        if !(v > 0.0) {
            return Err(QboxError::NonPositiveValue(v, lam));
        }
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(l, v)| (l.ln(), v.ln())).collect();
    let m = logs.len() as f64;
    let sx: f64 = logs.iter().map(|p| p.0).sum();
    let sy: f64 = logs.iter().map(|p| p.1).sum();
    let xbar = sx / m;
    let ybar = sy / m;
    let sxx: f64 = logs.iter().map(|p| (p.0 - xbar) * (p.0 - xbar)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - xbar) * (p.1 - ybar)).sum();
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let ss_res: f64 = logs
        .iter()
        .map(|p| {
            let r = p.1 - (intercept + slope * p.0);
            r * r
        })
        .sum();
    let ss_tot: f64 = logs.iter().map(|p| (p.1 - ybar) * (p.1 - ybar)).sum();
    let r_squared = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    Ok(PowerLawFit {
        exponent: slope,
        coefficient: intercept.exp(),
        r_squared,
    })
}

/// Fit with coarse-end pruning: drop the coarsest point while doing so
/// halves `1 - r^2` and at least 3 points remain. The coarsest lattices sit
/// outside the asymptotic regime; the finest sit near rounding noise, so
/// pruning stops as soon as it stops paying.
fn fit_adaptive(points: &[(f64, f64)]) -> Result<(PowerLawFit, PowerLawFit, usize)> {
    let initial = fit_power_law(points)?;
    let mut best = initial;
    let mut dropped = 0;
    while points.len() - dropped - 1 >= 3 {
        let candidate = fit_power_law(&points[dropped + 1..])?;
        if 1.0 - candidate.r_squared <= 0.5 * (1.0 - best.r_squared) {
            best = candidate;
            dropped += 1;
        } else {
            break;
        }
    }
    Ok((initial, best, dropped))
}

fn sweep_value(quantity: Quantity, n: usize, j0: usize, params: &PhysicalParams) -> Result<f64> {
    let lat = make_lattice(*params, j0)?;
    match quantity {
        Quantity::EnergyError => {
            Ok(continuum::continuum_energy(n, params)? - q_energy(n, &lat)?)
        }
        Quantity::DeltaPError => {
            let r = lattice_uncertainties(n, &lat)?;
            let cont = continuum::continuum_uncertainties(n, params)?;
            Ok(cont.delta_p - r.delta_p)
        }
        Quantity::DeltaX2Error => {
            let r = lattice_uncertainties(n, &lat)?;
            let cont = continuum::continuum_uncertainties(n, params)?;
            Ok(cont.delta_x * cont.delta_x - r.delta_x * r.delta_x)
        }
        Quantity::ProductRelCorrection => {
            let r = lattice_uncertainties(n, &lat)?;
            let (alpha, _) = product_expansion_coefficients(n, params)?;
            Ok(1.0 - r.product / (alpha * params.hbar / 2.0))
        }
        Quantity::PhaseDrift => {
            // evolve mode n for a duration of one radian of continuum phase
            let omega = continuum::continuum_energy(n, params)? / params.hbar;
            let steps = (1.0 / (omega * lat.tau0)).round().max(1.0);
            let theta = evolution::time_phase(omega, lat.tau0)?;
            Ok((steps * (theta + omega * lat.tau0)).abs())
        }
    }
}

/// Evaluate `quantity` for mode `n` on each lattice in `j0_list` and fit the
/// deviation as a power of `lambda0`. Lattices are processed in parallel;
/// results are ordered by decreasing `lambda0`.
pub fn sweep(
    n: usize,
    j0_list: &[usize],
    quantity: Quantity,
    params: &PhysicalParams,
) -> Result<ConvergenceSeries> {
    if j0_list.len() < 3 {
        return Err(QboxError::TooFewPoints(j0_list.len()));
    }
    if let Some(&bad) = j0_list.iter().find(|&&j0| j0 <= n) {
        return Err(QboxError::ModeOutOfRange {
            n,
            max: bad.saturating_sub(1),
        });
    }
    let mut points: Vec<SweepPoint> = j0_list
        .par_iter()
        .map(|&j0| {
            let lat = make_lattice(*params, j0)?;
            Ok(SweepPoint {
                j0,
                lambda0: lat.lambda0,
                value: sweep_value(quantity, n, j0, params)?,
            })
        })
        .collect::<Result<_>>()?;
    points.sort_by(|a, b| b.lambda0.partial_cmp(&a.lambda0).unwrap());

    let pairs: Vec<(f64, f64)> = points.iter().map(|p| (p.lambda0, p.value)).collect();
    let (initial_fit, fit, dropped_coarse) = fit_adaptive(&pairs)?;
    Ok(ConvergenceSeries {
        quantity,
        n,
        points,
        initial_fit,
        fit,
        dropped_coarse,
    })
}
