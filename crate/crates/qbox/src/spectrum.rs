//! Closed-form eigenvalues and eigenfunctions of the stride-2
//! central-difference Hamiltonian on the lattice.
//!
//! The spatial phase is `theta = 2 n pi / J0` and the dispersion relation
//! reads `k^2 lambda0^2 = sin^2(theta/2)`, equivalently
//! `cos(theta) = 1 - 2 k^2 lambda0^2`.

use ndarray::Array2;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::continuum;
use crate::error::{QboxError, Result};
use crate::lattice::{inner_product, LatticeSpec, WaveVector};

/// One lattice eigenstate.
#[derive(Debug, Clone, Serialize)]
pub struct Mode {
    pub n: usize,
    /// Spatial phase 2 n pi / J0, in (0, 2 pi).
    pub theta: f64,
    pub k_squared: f64,
    pub energy_q: f64,
    pub energy_continuum: f64,
    #[serde(serialize_with = "serialize_wave")]
    pub eigenfunction: WaveVector,
}

fn serialize_wave<S: serde::Serializer>(w: &WaveVector, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(w.len()))?;
    for v in &w.values {
        seq.serialize_element(&[v.re, v.im])?;
    }
    seq.end()
}

/// Substitution variables of the closed-form solution of the eigenvalue
/// equation: `y = k^2 lambda0^2` recovered from `t = tan(2 n pi lambda0 / L)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DerivationTrace {
    pub y: f64,
    pub t: f64,
}

pub(crate) fn check_mode(n: usize, lat: &LatticeSpec) -> Result<()> {
    if n < 1 || n > lat.j0 - 1 {
        return Err(QboxError::ModeOutOfRange {
            n,
            max: lat.j0 - 1,
        });
    }
    Ok(())
}

/// `sin(n pi / J0)` with the index folded to `min(n, J0 - n)` so that the
/// doubling symmetry n <-> J0 - n holds bit-for-bit.
pub(crate) fn mode_sin(n: usize, j0: usize) -> f64 {
    let m = n.min(j0 - n);
    (m as f64 * PI / j0 as f64).sin()
}

/// `k^2 = sin^2(n pi / J0) / lambda0^2 = (1 - cos(2 n pi lambda0 / L)) / (2 lambda0^2)`.
pub fn q_wavenumber_squared(n: usize, lat: &LatticeSpec) -> Result<f64> {
    check_mode(n, lat)?;
    let s = mode_sin(n, lat.j0);
    Ok((s / lat.lambda0) * (s / lat.lambda0))
}

/// Lattice energy `E^q_n = hbar^2 k^2 / (2 m)`.
pub fn q_energy(n: usize, lat: &LatticeSpec) -> Result<f64> {
    let k2 = q_wavenumber_squared(n, lat)?;
    let p = &lat.params;
    Ok(p.hbar * p.hbar * k2 / (2.0 * p.mass))
}

/// Leading term and `lambda0^2` correction coefficient of the lattice energy:
/// `E^q_n = pi^2 hbar^2 n^2 / (2 m L^2) - (pi^4 hbar^2 n^4 / (6 m L^4)) lambda0^2 + O(lambda0^4)`.
pub fn q_energy_expansion(n: usize, lat: &LatticeSpec) -> Result<(f64, f64)> {
    check_mode(n, lat)?;
    let p = &lat.params;
    let l = p.box_length;
    let nf = n as f64;
    let leading = PI * PI * p.hbar * p.hbar * nf * nf / (2.0 * p.mass * l * l);
    let correction =
        -PI.powi(4) * p.hbar * p.hbar * nf.powi(4) / (6.0 * p.mass * l.powi(4));
    Ok((leading, correction))
}

/// Pole-free residual of the eigenvalue equation,
/// `sin(phi) (1 - 2 k^2 lambda0^2) -+ cos(phi) 2 k lambda0 sqrt(1 - k^2 lambda0^2)`
/// with `phi = 2 n pi lambda0 / L`. The two signs are the conjugate root
/// pair of the ansatz; the branch with the smaller magnitude is returned,
/// so the result is zero iff `k` solves the eigenvalue equation.
pub fn eigenvalue_equation_residual(k: f64, n: usize, lat: &LatticeSpec) -> Result<f64> {
    let y = k * k * lat.lambda0 * lat.lambda0;
    if y > 1.0 {
        return Err(QboxError::OutsideBand(y));
    }
    let phi = 2.0 * n as f64 * PI / lat.j0 as f64;
    let (s, c) = phi.sin_cos();
    let rhs = c * 2.0 * k * lat.lambda0 * (1.0 - y).sqrt();
    let lhs = s * (1.0 - 2.0 * y);
    let plus = lhs - rhs;
    let minus = lhs + rhs;
    Ok(if plus.abs() <= minus.abs() { plus } else { minus })
}

/// Normalized eigenmode `u^q_n(j lambda0) = sqrt(2/L) sin(n pi j lambda0 / L)`
/// with hard zeros at both endpoints.
pub fn q_eigenfunction(n: usize, lat: &LatticeSpec) -> Result<Mode> {
    check_mode(n, lat)?;
    let p = &lat.params;
    let l = p.box_length;
    let amp = (2.0 / l).sqrt();
    let nf = n as f64;
    let mut values = vec![Complex64::new(0.0, 0.0); lat.num_sites()];
    for (j, v) in values.iter_mut().enumerate().take(lat.j0).skip(1) {
        *v = Complex64::new(amp * (nf * PI * lat.site(j) / l).sin(), 0.0);
    }
    Ok(Mode {
        n,
        theta: 2.0 * nf * PI / lat.j0 as f64,
        k_squared: q_wavenumber_squared(n, lat)?,
        energy_q: q_energy(n, lat)?,
        energy_continuum: continuum::continuum_energy(n, p)?,
        eigenfunction: WaveVector::new(values),
    })
}

/// Recover `y = k^2 lambda0^2` from `t = tan(2 n pi lambda0 / L)` via the
/// substitution route. Only agrees with the direct formula where
/// `cos(2 n pi lambda0 / L) > 0`; kept as a diagnostic cross-check.
pub fn derivation_trace(n: usize, lat: &LatticeSpec) -> Result<DerivationTrace> {
    check_mode(n, lat)?;
    let phi = 2.0 * n as f64 * PI / lat.j0 as f64;
    let t = phi.tan();
    let one_t2 = 1.0 + t * t;
    let y = (one_t2 - one_t2.sqrt()) / (2.0 * one_t2);
    Ok(DerivationTrace { y, t })
}

/// Matrix of inner products of all normalized modes; the identity up to
/// rounding (discrete sine orthogonality).
pub fn gram_matrix(lat: &LatticeSpec) -> Result<Array2<f64>> {
    let dim = lat.num_modes();
    let modes: Vec<WaveVector> = (1..=dim)
        .map(|n| Ok(q_eigenfunction(n, lat)?.eigenfunction))
        .collect::<Result<_>>()?;
    let mut g = Array2::zeros((dim, dim));
    for a in 0..dim {
        for b in a..dim {
            let ip = inner_product(&modes[a], &modes[b], lat)?.re;
            g[[a, b]] = ip;
            g[[b, a]] = ip;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_lattice, PhysicalParams};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn unit_lattice(j0: usize) -> LatticeSpec {
        make_lattice(PhysicalParams::default(), j0).unwrap()
    }

    #[test]
    fn wavenumber_closed_form() {
        let lat = unit_lattice(4);
        let k2 = q_wavenumber_squared(1, &lat).unwrap();
        assert_relative_eq!(k2 * lat.lambda0 * lat.lambda0, 0.5, max_relative = 1e-15);
        assert_relative_eq!(k2, 8.0, max_relative = 1e-14);
        let k2 = q_wavenumber_squared(2, &lat).unwrap();
        assert_relative_eq!(k2, 16.0, max_relative = 1e-14);
        let lat = unit_lattice(8);
        assert_relative_eq!(
            q_wavenumber_squared(1, &lat).unwrap(),
            9.3725830,
            max_relative = 1e-7
        );
    }

    #[test]
    fn wavenumber_matches_cosine_form() {
        for j0 in [3usize, 5, 8, 17, 64] {
            let lat = unit_lattice(j0);
            for n in 1..j0 {
                let k2 = q_wavenumber_squared(n, &lat).unwrap();
                let phi = 2.0 * n as f64 * PI * lat.lambda0 / lat.params.box_length;
                let via_cos = (1.0 - phi.cos()) / (2.0 * lat.lambda0 * lat.lambda0);
                assert_relative_eq!(k2, via_cos, max_relative = 1e-12, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn mode_range_rejected() {
        let lat = unit_lattice(4);
        assert!(q_wavenumber_squared(0, &lat).is_err());
        assert!(q_wavenumber_squared(4, &lat).is_err());
        assert!(q_eigenfunction(5, &lat).is_err());
    }

    #[test]
    fn energy_values_and_doubling() {
        let lat = unit_lattice(4);
        assert_relative_eq!(q_energy(1, &lat).unwrap(), 4.0, max_relative = 1e-14);
        assert_relative_eq!(q_energy(2, &lat).unwrap(), 8.0, max_relative = 1e-14);
        // doubling degeneracy is bit-exact
        assert_eq!(q_energy(1, &lat).unwrap(), q_energy(3, &lat).unwrap());
    }

    #[test]
    fn energy_below_continuum_and_band_edge() {
        let lat = unit_lattice(16);
        let p = &lat.params;
        let mut max_e: f64 = 0.0;
        for n in 1..16 {
            let eq = q_energy(n, &lat).unwrap();
            let ec = continuum::continuum_energy(n, p).unwrap();
            assert!(eq < ec, "E^q({n}) = {eq} not below continuum {ec}");
            max_e = max_e.max(eq);
        }
        let band_edge = p.hbar * p.hbar / (2.0 * p.mass * lat.lambda0 * lat.lambda0);
        assert_relative_eq!(max_e, band_edge, max_relative = 1e-14);
        assert_eq!(q_energy(8, &lat).unwrap(), max_e);
    }

    #[test]
    fn expansion_coefficients() {
        let lat = unit_lattice(8);
        let (leading, coeff) = q_energy_expansion(1, &lat).unwrap();
        assert_relative_eq!(leading, 4.9348022, max_relative = 1e-7);
        assert_relative_eq!(coeff, -16.2348485, max_relative = 1e-7);
        let (_, c2) = q_energy_expansion(2, &lat).unwrap();
        assert_relative_eq!(c2, 16.0 * coeff, max_relative = 1e-14);
    }

    #[test]
    fn expansion_residual_is_fourth_order() {
        // residual of E^q - (leading + coeff lambda0^2) falls off as lambda0^4
        let p = PhysicalParams::default();
        let points: Vec<(f64, f64)> = (4..10)
            .map(|k| {
                let lat = make_lattice(p, 1 << k).unwrap();
                let (leading, coeff) = q_energy_expansion(1, &lat).unwrap();
                let resid = (q_energy(1, &lat).unwrap()
                    - (leading + coeff * lat.lambda0 * lat.lambda0))
                    .abs();
                (lat.lambda0, resid)
            })
            .collect();
        let fit = crate::analysis::fit_power_law(&points).unwrap();
        assert!((fit.exponent - 4.0).abs() < 0.05, "slope {}", fit.exponent);
    }

    #[test]
    fn residual_zero_at_exact_roots() {
        for j0 in [4usize, 8, 16, 31] {
            let lat = unit_lattice(j0);
            for n in 1..j0 {
                let k = q_wavenumber_squared(n, &lat).unwrap().sqrt();
                let r = eigenvalue_equation_residual(k, n, &lat).unwrap();
                assert!(r.abs() < 1e-12, "J0={j0} n={n} residual {r}");
            }
        }
    }

    #[test]
    fn residual_nonzero_at_wrong_root() {
        let lat = unit_lattice(16);
        let k = 0.99 * q_wavenumber_squared(1, &lat).unwrap().sqrt();
        let r = eigenvalue_equation_residual(k, 1, &lat).unwrap();
        assert!(r.abs() > 1e-4);
    }

    #[test]
    fn residual_survives_tan_pole() {
        // n=1, J0=4 has 1 - 2 k^2 lambda0^2 = 0, the tan-form pole
        let lat = unit_lattice(4);
        let k = q_wavenumber_squared(1, &lat).unwrap().sqrt();
        let r = eigenvalue_equation_residual(k, 1, &lat).unwrap();
        assert!(r.abs() < 1e-12);
    }

    #[test]
    fn residual_rejects_outside_band() {
        let lat = unit_lattice(4);
        let k_max = 1.0 / lat.lambda0;
        assert!(eigenvalue_equation_residual(1.1 * k_max, 1, &lat).is_err());
    }

    #[test]
    fn eigenfunction_samples() {
        let lat = unit_lattice(4);
        let m = q_eigenfunction(1, &lat).unwrap();
        let expected = [0.0, 1.0, 1.4142136, 1.0, 0.0];
        for (v, e) in m.eigenfunction.values.iter().zip(expected) {
            assert_relative_eq!(v.re, e, epsilon = 1e-7);
            assert_eq!(v.im, 0.0);
        }
        let m2 = q_eigenfunction(2, &lat).unwrap();
        let expected2 = [0.0, 2.0f64.sqrt(), 0.0, -(2.0f64.sqrt()), 0.0];
        for (v, e) in m2.eigenfunction.values.iter().zip(expected2) {
            assert_relative_eq!(v.re, e, epsilon = 1e-12);
        }
    }

    #[test]
    fn eigenfunction_normalized() {
        for j0 in [2usize, 4, 9, 32] {
            let lat = unit_lattice(j0);
            for n in 1..j0 {
                let m = q_eigenfunction(n, &lat).unwrap();
                let ip = inner_product(&m.eigenfunction, &m.eigenfunction, &lat).unwrap();
                assert_relative_eq!(ip.re, 1.0, max_relative = 1e-13);
                assert!(m.eigenfunction.satisfies_boundary());
            }
        }
    }

    #[test]
    fn derivation_trace_agrees_where_cos_positive() {
        for j0 in [8usize, 16, 33] {
            let lat = unit_lattice(j0);
            for n in 1..j0 {
                let phi = 2.0 * n as f64 * PI / j0 as f64;
                if phi.cos() <= 1e-3 {
                    continue;
                }
                let tr = derivation_trace(n, &lat).unwrap();
                let y = q_wavenumber_squared(n, &lat).unwrap() * lat.lambda0 * lat.lambda0;
                assert_relative_eq!(tr.y, y, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn gram_matrix_identity() {
        for j0 in [2usize, 8, 64] {
            let lat = unit_lattice(j0);
            let g = gram_matrix(&lat).unwrap();
            let dim = j0 - 1;
            assert_eq!(g.dim(), (dim, dim));
            for a in 0..dim {
                for b in 0..dim {
                    let expected = if a == b { 1.0 } else { 0.0 };
                    assert!(
                        (g[[a, b]] - expected).abs() < 1e-11,
                        "J0={j0} entry ({a},{b}) = {}",
                        g[[a, b]]
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn phase_dispersion_identity(j0 in 2usize..80, sel in 0.0f64..1.0) {
            let lat = unit_lattice(j0);
            let n = 1 + ((j0 - 1) as f64 * sel) as usize;
            let n = n.min(j0 - 1);
            let m = q_eigenfunction(n, &lat).unwrap();
            let half = (m.theta / 2.0).sin();
            let y = m.k_squared * lat.lambda0 * lat.lambda0;
            prop_assert!((half * half - y).abs() < 1e-13);
            // cos(theta) = 1 - 2 k^2 lambda0^2
            prop_assert!((m.theta.cos() - (1.0 - 2.0 * y)).abs() < 1e-12);
        }

        #[test]
        fn doubling_symmetry(j0 in 3usize..120, sel in 0.0f64..1.0) {
            let lat = unit_lattice(j0);
            let n = (1 + ((j0 - 2) as f64 * sel) as usize).min(j0 - 1);
            prop_assert_eq!(
                q_energy(n, &lat).unwrap(),
                q_energy(j0 - n, &lat).unwrap()
            );
        }
    }
}
