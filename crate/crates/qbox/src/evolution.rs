//! Time sector: the leapfrog difference equation for the phase factor T(t),
//! its closed-form solution, and the convergence of the discrete phase to
//! the continuum `e^{-i omega t}`.
//!
//! The phase per step is `theta = -arcsin(omega tau0)`, the unique branch
//! that satisfies the recurrence and reduces to `-omega tau0` as the step
//! shrinks. The formula requires `omega tau0 < 1` (stability domain).

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::analysis::{fit_power_law, PowerLawFit};
use crate::error::{QboxError, Result};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct EvolutionParams {
    /// Angular frequency E / hbar.
    pub omega: f64,
    pub tau0: f64,
    pub steps: usize,
}

/// How the second starting value of the two-step recurrence is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Seed {
    /// `T(tau0) = e^{i theta}`; isolates the physical root.
    ClosedFormSeed,
    /// `T(tau0) = (1 - i omega tau0)` normalized to unit modulus; excites
    /// the parasitic root of the leapfrog scheme.
    EulerSeed,
}

/// The phase factor sampled at each time step.
#[derive(Debug, Clone, Serialize)]
pub struct PhaseSequence {
    #[serde(serialize_with = "serialize_complex_seq")]
    pub values: Vec<Complex64>,
    /// Phase advance per step.
    pub theta: f64,
}

fn serialize_complex_seq<S: serde::Serializer>(
    v: &[Complex64],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for c in v {
        seq.serialize_element(&[c.re, c.im])?;
    }
    seq.end()
}

/// Phase per step, `theta = -arcsin(omega tau0)` in (-pi/2, 0].
pub fn time_phase(omega: f64, tau0: f64) -> Result<f64> {
    let x = omega * tau0;
    if x.abs() >= 1.0 {
        return Err(QboxError::StabilityDomain(x));
    }
    Ok(-x.asin())
}

/// Closed-form sequence `T(j tau0) = e^{i j theta}` with `T(0) = 1`.
pub fn evolve_closed(p: &EvolutionParams) -> Result<PhaseSequence> {
    let theta = time_phase(p.omega, p.tau0)?;
    let values = (0..=p.steps)
        .map(|j| {
            // compensated j*theta: the plain product loses ~ulp(j*theta),
            // which at 1e4 steps is ~1e-13 rad and would dominate the
            // recurrence residual
            let jf = j as f64;
            let hi = jf * theta;
            let lo = jf.mul_add(theta, -hi);
            let (s, c) = hi.sin_cos();
            Complex64::new(c - lo * s, s + lo * c)
        })
        .collect();
    Ok(PhaseSequence { values, theta })
}

/// Step the two-term recurrence `T(j+1) = T(j-1) - 2 i tau0 omega T(j)`
/// explicitly from `T(0) = 1` and the chosen second seed.
pub fn evolve_recurrence(p: &EvolutionParams, seed: Seed) -> Result<PhaseSequence> {
    let theta = time_phase(p.omega, p.tau0)?;
    if p.steps < 2 {
        return Err(QboxError::InvalidParam(format!(
            "recurrence needs at least 2 steps, got {}",
            p.steps
        )));
    }
    let first = match seed {
        Seed::ClosedFormSeed => Complex64::from_polar(1.0, theta),
        Seed::EulerSeed => {
            let e = Complex64::new(1.0, -p.omega * p.tau0);
            e / e.norm()
        }
    };
    let mut values = Vec::with_capacity(p.steps + 1);
    values.push(Complex64::new(1.0, 0.0));
    values.push(first);
    let coupling = Complex64::new(0.0, -2.0 * p.tau0 * p.omega);
    for j in 1..p.steps {
        let next = values[j - 1] + coupling * values[j];
        values.push(next);
    }
    Ok(PhaseSequence { values, theta })
}

/// Residual of the recurrence at each interior step of a sequence.
pub fn recurrence_residuals(seq: &PhaseSequence, omega: f64, tau0: f64) -> Vec<f64> {
    let coupling = Complex64::new(0.0, 2.0 * tau0 * omega);
    seq.values
        .windows(3)
        .map(|w| (w[2] - w[0] + coupling * w[1]).norm())
        .collect()
}

fn wrap_angle(x: f64) -> f64 {
    let mut r = x % (2.0 * PI);
    if r > PI {
        r -= 2.0 * PI;
    } else if r <= -PI {
        r += 2.0 * PI;
    }
    r
}

/// Accumulated phase error against `e^{-i omega t}` after evolving for
/// `total_time` in steps of `tau0`.
pub fn phase_drift(omega: f64, total_time: f64, tau0: f64) -> Result<f64> {
    let steps = (total_time / tau0).round();
    if steps < 1.0 || (steps * tau0 - total_time).abs() > 1e-9 * total_time.abs() {
        return Err(QboxError::NonDivisibleStep {
            tau0,
            total: total_time,
        });
    }
    let theta = time_phase(omega, tau0)?;
    Ok(wrap_angle(steps * theta + omega * total_time).abs())
}

/// Log-log fit of the accumulated phase drift against the step size;
/// the expected exponent is 2.
pub fn phase_drift_order(omega: f64, total_time: f64, tau0_list: &[f64]) -> Result<PowerLawFit> {
    if tau0_list.is_empty() {
        return Err(QboxError::TooFewPoints(0));
    }
    let points: Vec<(f64, f64)> = tau0_list
        .iter()
        .map(|&tau0| Ok((tau0, phase_drift(omega, total_time, tau0)?)))
        .collect::<Result<_>>()?;
    fit_power_law(&points)
}
