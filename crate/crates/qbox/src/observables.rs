//! Discrete expectation values and uncertainties, by closed form and by
//! direct lambda0-weighted summation, plus the series coefficients of the
//! modified uncertainty product.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{QboxError, Result};
use crate::lattice::{inner_product, LatticeSpec, PhysicalParams, WaveVector};
use crate::oracle::GhostPolicy;
use crate::spectrum::{self, q_eigenfunction};

/// Expectation values of one mode. `p2` is carried by both routes: the
/// energy shortcut `<p^2> = 2 m E^q` and the double application of the
/// stride-1 central-difference momentum operator.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExpectationSet {
    pub n: usize,
    pub p_mean: f64,
    pub p2_via_energy: f64,
    pub p2_via_operator: f64,
    pub x_mean: f64,
    pub x2_mean: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct UncertaintyReport {
    pub n: usize,
    pub delta_x: f64,
    pub delta_p: f64,
    pub product: f64,
    pub product_over_hbar_half: f64,
    /// Continuum value of the product in units of hbar/2.
    pub alpha: f64,
    /// Coefficient of lambda0^2 in the relative correction of the product.
    pub beta: f64,
    pub continuum_product: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScanRow {
    pub n: usize,
    pub delta_x: f64,
    pub delta_p: f64,
    pub product: f64,
    pub product_over_hbar_half: f64,
    pub continuum_product: f64,
}

/// Uncertainty products across every mode of one lattice.
#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    #[serde(rename = "J0")]
    pub j0: usize,
    pub rows: Vec<ScanRow>,
    pub min_product: f64,
    pub min_n: usize,
    /// Set when any mode has product < hbar/2 (coarse-lattice effect).
    pub sub_heisenberg: bool,
}

/// Apply the central-difference momentum `-i hbar (f_{j+1} - f_{j-1}) / (2 lambda0)`.
/// Endpoint outputs use ghost values fixed by `policy`.
pub fn momentum_apply(f: &WaveVector, lat: &LatticeSpec, policy: GhostPolicy) -> Result<WaveVector> {
    if f.len() != lat.num_sites() {
        return Err(QboxError::LengthMismatch(f.len(), lat.num_sites()));
    }
    let j0 = lat.j0;
    let ghost_low = match policy {
        GhostPolicy::HardZero => Complex64::new(0.0, 0.0),
        GhostPolicy::OddExtension => -f.values[1],
    };
    let ghost_high = match policy {
        GhostPolicy::HardZero => Complex64::new(0.0, 0.0),
        GhostPolicy::OddExtension => -f.values[j0 - 1],
    };
    let factor = Complex64::new(0.0, -lat.params.hbar / (2.0 * lat.lambda0));
    let mut out = Vec::with_capacity(f.len());
    for j in 0..=j0 {
        let fw = if j == j0 { ghost_high } else { f.values[j + 1] };
        let bw = if j == 0 { ghost_low } else { f.values[j - 1] };
        out.push(factor * (fw - bw));
    }
    Ok(WaveVector::new(out))
}

/// All expectation values of mode `n` by direct lambda0-weighted summation.
pub fn expectations(n: usize, lat: &LatticeSpec) -> Result<ExpectationSet> {
    let mode = q_eigenfunction(n, lat)?;
    let u = &mode.eigenfunction;
    let p = &lat.params;

    let pu = momentum_apply(u, lat, GhostPolicy::OddExtension)?;
    let p_mean = inner_product(u, &pu, lat)?.re;
    let ppu = momentum_apply(&pu, lat, GhostPolicy::OddExtension)?;
    let p2_via_operator = inner_product(u, &ppu, lat)?.re;
    let p2_via_energy = 2.0 * p.mass * mode.energy_q;

    let mut x_sum = 0.0;
    let mut x2_sum = 0.0;
    for (j, v) in u.values.iter().enumerate() {
        let x = lat.site(j);
        let w = v.norm_sqr();
        x_sum += x * w;
        x2_sum += x * x * w;
    }
    Ok(ExpectationSet {
        n,
        p_mean,
        p2_via_energy,
        p2_via_operator,
        x_mean: lat.lambda0 * x_sum,
        x2_mean: lat.lambda0 * x2_sum,
    })
}

/// Closed form `<x^2>_n = L^2/3 + lambda0^2/6 - (lambda0^2/2) csc^2(n pi lambda0 / L)`.
pub fn x2_closed_form(n: usize, lat: &LatticeSpec) -> Result<f64> {
    spectrum::check_mode(n, lat)?;
    let l = lat.params.box_length;
    let s = spectrum::mode_sin(n, lat.j0);
    let lam2 = lat.lambda0 * lat.lambda0;
    Ok(l * l / 3.0 + lam2 / 6.0 - lam2 / (2.0 * s * s))
}

/// Series coefficients of `dx dp = alpha (1 + beta lambda0^2) (hbar/2) + O(lambda0^4)`:
/// `alpha = sqrt((n^2 pi^2 - 6)/3)`, `beta = -n^2 pi^2 / (6 L^2)`.
pub fn product_expansion_coefficients(n: usize, params: &PhysicalParams) -> Result<(f64, f64)> {
    if n < 1 {
        return Err(QboxError::ModeOutOfRange { n, max: usize::MAX });
    }
    let npi = n as f64 * PI;
    let alpha = ((npi * npi - 6.0) / 3.0).sqrt();
    let beta = -npi * npi / (6.0 * params.box_length * params.box_length);
    Ok((alpha, beta))
}

/// Closed-form lattice uncertainties:
/// `dp = (hbar/lambda0) sin(n pi lambda0 / L)`,
/// `dx = (1/(2 sqrt 3)) sqrt(L^2 + 2 lambda0^2 - 6 lambda0^2 csc^2(n pi lambda0 / L))`.
pub fn lattice_uncertainties(n: usize, lat: &LatticeSpec) -> Result<UncertaintyReport> {
    spectrum::check_mode(n, lat)?;
    let p = &lat.params;
    let l = p.box_length;
    let s = spectrum::mode_sin(n, lat.j0);
    let lam2 = lat.lambda0 * lat.lambda0;

    let delta_p = p.hbar * s / lat.lambda0;
    let mut dx2 = (l * l + 2.0 * lam2 - 6.0 * lam2 / (s * s)) / 12.0;
    if dx2 < 0.0 {
        // the variance is nonnegative for every valid mode; tolerate rounding
        // at the exact-zero point (J0 = 2) and reject anything worse
        if dx2 > -1e-12 * l * l {
            dx2 = 0.0;
        } else {
            return Err(QboxError::NegativeVariance(dx2));
        }
    }
    let delta_x = dx2.sqrt();
    let product = delta_x * delta_p;
    let (alpha, beta) = product_expansion_coefficients(n, p)?;
    Ok(UncertaintyReport {
        n,
        delta_x,
        delta_p,
        product,
        product_over_hbar_half: product / (p.hbar / 2.0),
        alpha,
        beta,
        continuum_product: alpha * p.hbar / 2.0,
    })
}

/// Uncertainty product for every mode of the lattice, with the minimum and a
/// flag raised whenever a product drops below hbar/2.
pub fn heisenberg_scan(lat: &LatticeSpec) -> Result<ScanReport> {
    let hbar_half = lat.params.hbar / 2.0;
    let mut rows = Vec::with_capacity(lat.num_modes());
    let mut min_product = f64::INFINITY;
    let mut min_n = 0;
    for n in 1..lat.j0 {
        let r = lattice_uncertainties(n, lat)?;
        if r.product < min_product {
            min_product = r.product;
            min_n = n;
        }
        rows.push(ScanRow {
            n,
            delta_x: r.delta_x,
            delta_p: r.delta_p,
            product: r.product,
            product_over_hbar_half: r.product_over_hbar_half,
            continuum_product: r.continuum_product,
        });
    }
    let sub_heisenberg = min_product < hbar_half * (1.0 - 1e-9);
    Ok(ScanReport {
        j0: lat.j0,
        rows,
        min_product,
        min_n,
        sub_heisenberg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::make_lattice;
    use approx::assert_relative_eq;

    fn unit_lattice(j0: usize) -> LatticeSpec {
        make_lattice(PhysicalParams::default(), j0).unwrap()
    }

    #[test]
    fn momentum_of_mode_matches_trig_identity() {
        // sin(a(j+1)) - sin(a(j-1)) = 2 cos(a j) sin(a)
        let lat = unit_lattice(8);
        let u = q_eigenfunction(1, &lat).unwrap().eigenfunction;
        let g = momentum_apply(&u, &lat, GhostPolicy::OddExtension).unwrap();
        let a = PI / 8.0;
        let amp = 2.0f64.sqrt();
        for (j, v) in g.values.iter().enumerate() {
            let expected = -1.0 / lat.lambda0 * amp * (a * j as f64).cos() * a.sin();
            assert_relative_eq!(v.im, expected, epsilon = 1e-13);
            assert_eq!(v.re, 0.0);
        }
    }

    #[test]
    fn momentum_of_constant_interior() {
        let lat = unit_lattice(8);
        let mut vals = vec![Complex64::new(1.0, 0.0); 9];
        vals[0] = Complex64::new(0.0, 0.0);
        vals[8] = Complex64::new(0.0, 0.0);
        let f = WaveVector::new(vals);
        let g = momentum_apply(&f, &lat, GhostPolicy::HardZero).unwrap();
        for (j, v) in g.values.iter().enumerate() {
            if (2..=6).contains(&j) {
                assert_eq!(v.norm(), 0.0, "interior entry {j}");
            }
        }
        assert!(g.values[1].norm() > 0.0);
        assert!(g.values[7].norm() > 0.0);
    }

    #[test]
    fn momentum_of_zero_is_zero() {
        let lat = unit_lattice(4);
        let f = WaveVector::zeros(5);
        let g = momentum_apply(&f, &lat, GhostPolicy::OddExtension).unwrap();
        assert!(g.values.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn expectations_j0_4_ground_mode() {
        let lat = unit_lattice(4);
        let e = expectations(1, &lat).unwrap();
        assert!(e.p_mean.abs() < 1e-12);
        assert_relative_eq!(e.p2_via_energy, 8.0, max_relative = 1e-13);
        assert_relative_eq!(e.p2_via_operator, 8.0, max_relative = 1e-10);
        assert_relative_eq!(e.x_mean, 0.5, epsilon = 1e-13);
        assert_relative_eq!(e.x2_mean, 0.28125, epsilon = 1e-13);
        assert_relative_eq!(e.x2_mean, x2_closed_form(1, &lat).unwrap(), max_relative = 1e-12);
    }

    #[test]
    fn expectations_j0_3() {
        let lat = unit_lattice(3);
        let e = expectations(1, &lat).unwrap();
        assert_relative_eq!(e.x2_mean, 5.0 / 18.0, max_relative = 1e-13);
        assert_relative_eq!(e.x2_mean, 0.2777778, max_relative = 1e-6);
    }

    #[test]
    fn x_mean_is_half_box_for_all_modes() {
        for j0 in [3usize, 7, 16, 33] {
            let lat = unit_lattice(j0);
            for n in 1..j0 {
                let e = expectations(n, &lat).unwrap();
                assert_relative_eq!(e.x_mean, 0.5, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn p2_routes_agree() {
        for j0 in [4usize, 9, 32] {
            let lat = unit_lattice(j0);
            for n in 1..j0 {
                let e = expectations(n, &lat).unwrap();
                assert_relative_eq!(e.p2_via_operator, e.p2_via_energy, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn mean_momentum_vanishes_including_complex_part() {
        for j0 in [3usize, 8, 21] {
            let lat = unit_lattice(j0);
            for n in 1..j0 {
                let u = q_eigenfunction(n, &lat).unwrap().eigenfunction;
                let pu = momentum_apply(&u, &lat, GhostPolicy::OddExtension).unwrap();
                let c = inner_product(&u, &pu, &lat).unwrap();
                assert!(c.norm() < 1e-12, "J0={j0} n={n} <p> = {c}");
            }
        }
    }

    #[test]
    fn closed_form_uncertainties_j0_4() {
        let lat = unit_lattice(4);
        let r = lattice_uncertainties(1, &lat).unwrap();
        assert_relative_eq!(r.delta_p, 2.8284271, epsilon = 1e-7);
        assert_relative_eq!(r.delta_x, 0.1767767, epsilon = 1e-7);
        assert_relative_eq!(r.product, 0.5, epsilon = 1e-13);
    }

    #[test]
    fn closed_form_uncertainties_j0_3() {
        let lat = unit_lattice(3);
        let r = lattice_uncertainties(1, &lat).unwrap();
        assert_relative_eq!(r.delta_x, 1.0 / 6.0, max_relative = 1e-13);
        assert_relative_eq!(r.product, 0.4330127, epsilon = 1e-7);
        assert!(r.product < 0.5);
    }

    #[test]
    fn closed_forms_match_direct_sums() {
        for j0 in [2usize, 3, 4, 7, 16, 64] {
            let lat = unit_lattice(j0);
            for n in 1..j0 {
                let e = expectations(n, &lat).unwrap();
                let r = lattice_uncertainties(n, &lat).unwrap();
                let dx_direct = (e.x2_mean - e.x_mean * e.x_mean).max(0.0).sqrt();
                let dp_direct = (e.p2_via_operator - e.p_mean * e.p_mean).sqrt();
                assert_relative_eq!(r.delta_x, dx_direct, max_relative = 1e-12, epsilon = 1e-12);
                assert_relative_eq!(r.delta_p, dp_direct, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn expansion_coefficients_values() {
        let p = PhysicalParams::default();
        let (alpha, beta) = product_expansion_coefficients(1, &p).unwrap();
        assert_relative_eq!(alpha, 1.1357236, epsilon = 1e-7);
        assert_relative_eq!(beta, -1.6449341, epsilon = 1e-7);
        let (_, b2) = product_expansion_coefficients(2, &p).unwrap();
        assert_relative_eq!(b2, 4.0 * beta, max_relative = 1e-14);
        let wide = PhysicalParams::new(1.0, 1.0, 2.0, 1.0).unwrap();
        let (_, bw) = product_expansion_coefficients(1, &wide).unwrap();
        assert_relative_eq!(bw, beta / 4.0, max_relative = 1e-14);
    }

    #[test]
    fn product_approaches_series_form() {
        let p = PhysicalParams::default();
        let lat = make_lattice(p, 1024).unwrap();
        let r = lattice_uncertainties(1, &lat).unwrap();
        let lam2 = lat.lambda0 * lat.lambda0;
        let series = r.alpha * (1.0 + r.beta * lam2);
        assert_relative_eq!(r.product_over_hbar_half, series, max_relative = 1e-9);
    }

    #[test]
    fn delta_p_series_residual_fourth_order() {
        let p = PhysicalParams::default();
        let n = 1;
        let points: Vec<(f64, f64)> = (4..10)
            .map(|k| {
                let lat = make_lattice(p, 1 << k).unwrap();
                let r = lattice_uncertainties(n, &lat).unwrap();
                let npi = n as f64 * PI;
                let series = npi - npi.powi(3) * lat.lambda0 * lat.lambda0 / 6.0;
                (lat.lambda0, (r.delta_p - series).abs())
            })
            .collect();
        let fit = crate::analysis::fit_power_law(&points).unwrap();
        assert!((fit.exponent - 4.0).abs() < 0.05, "slope {}", fit.exponent);
    }

    #[test]
    fn delta_x2_series_coefficient() {
        let p = PhysicalParams::default();
        let n = 1;
        let points: Vec<(f64, f64)> = (4..10)
            .map(|k| {
                let lat = make_lattice(p, 1 << k).unwrap();
                let r = lattice_uncertainties(n, &lat).unwrap();
                let npi = n as f64 * PI;
                let cont = 1.0 / 12.0 - 1.0 / (2.0 * npi * npi);
                (lat.lambda0, cont - r.delta_x * r.delta_x)
            })
            .collect();
        let fit = crate::analysis::fit_power_law(&points).unwrap();
        assert!((fit.exponent - 4.0).abs() < 0.05, "slope {}", fit.exponent);
        let expected = PI * PI / 30.0;
        assert!(
            (fit.coefficient - expected).abs() / expected < 0.05,
            "coefficient {} vs {}",
            fit.coefficient,
            expected
        );
    }

    #[test]
    fn scan_coarse_lattices() {
        let scan = heisenberg_scan(&unit_lattice(3)).unwrap();
        assert_eq!(scan.min_n, 1);
        assert_relative_eq!(scan.min_product, 0.4330127, epsilon = 1e-6);
        assert!(scan.sub_heisenberg);

        let scan = heisenberg_scan(&unit_lattice(4)).unwrap();
        assert_relative_eq!(scan.min_product, 0.5, epsilon = 1e-12);
        assert!(!scan.sub_heisenberg);

        let scan = heisenberg_scan(&unit_lattice(1024)).unwrap();
        assert!(scan.min_product >= 0.567);
        assert!(!scan.sub_heisenberg);
    }
}
