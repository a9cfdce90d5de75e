//! Quantum correlation measures on two-mode Gaussian states.
//!
//! All entropies and the logarithmic negativity are in bits.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{
    block_invariants, partial_transpose, symplectic_eigenvalues, CovMatrix2Mode, Mode,
    SymplecticSpectrum, TOL_NUM, TOL_PHYS,
};
use crate::model::{
    mode_pair, output_covariance, small_parameter, thermal_occupation, truncation_tolerance,
    ExperimentParams, PERTURBATIVE_LIMIT,
};

/// Formula values above this (negative) number are rounded up to zero discord.
pub const DISCORD_CLAMP: f64 = -1e-10;

/// Von Neumann entropy (bits) of a single-mode thermal state with
/// symplectic eigenvalue `x`:
/// `h(x) = (x+½)log₂(x+½) − (x−½)log₂(x−½)`, with `h(½) = 0`.
pub fn entropy_h(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.5 - TOL_NUM {
        return Err(Error::Domain(format!("h(x) requires x >= 1/2, got {x}")));
    }
    let x = x.max(0.5);
    let upper = x + 0.5;
    let lower = x - 0.5;
    let tail = if lower > 0.0 {
        lower * lower.log2()
    } else {
        0.0
    };
    Ok(upper * upper.log2() - tail)
}

/// Lifts values inside `[½ − tol, ½)` to ½.
fn lift(x: f64, tol: f64) -> f64 {
    if x < 0.5 && x >= 0.5 - tol {
        0.5
    } else {
        x
    }
}

fn physical_spectrum(v: &CovMatrix2Mode, tol_phys: f64) -> Result<SymplecticSpectrum> {
    let s = symplectic_eigenvalues(v)?;
    if s.nu_minus < 0.5 - tol_phys {
        return Err(Error::InvalidState(format!(
            "smallest symplectic eigenvalue {} violates the uncertainty relation (tolerance {tol_phys:e})",
            s.nu_minus
        )));
    }
    Ok(s)
}

fn check_squeezed_thermal_shape(v: &CovMatrix2Mode) -> Result<()> {
    let tol = TOL_NUM * v.entries().amax().max(1.0);
    let (a, b, c) = (v.block_a(), v.block_b(), v.block_c());
    let isotropic =
        |m: &nalgebra::Matrix2<f64>| (m[(0, 0)] - m[(1, 1)]).abs() <= tol && m[(0, 1)].abs() <= tol;
    let sigma_x =
        c[(0, 0)].abs() <= tol && c[(1, 1)].abs() <= tol && (c[(0, 1)] - c[(1, 0)]).abs() <= tol;
    let sigma_z =
        c[(0, 1)].abs() <= tol && c[(1, 0)].abs() <= tol && (c[(0, 0)] + c[(1, 1)]).abs() <= tol;
    if isotropic(&a) && isotropic(&b) && (sigma_x || sigma_z) {
        Ok(())
    } else {
        Err(Error::Shape(
            "discord formula needs a squeezed thermal state (isotropic local blocks, sigma_x or sigma_z correlations)".into(),
        ))
    }
}

/// Gaussian discord formula before clamping, with measurement on the `+`
/// mode. Arguments of `h` within `tol_phys` below ½ are lifted to ½.
pub fn discord_formula(v: &CovMatrix2Mode, tol_phys: f64) -> Result<f64> {
    check_squeezed_thermal_shape(v)?;
    let s = physical_spectrum(v, tol_phys)?;
    let inv = block_invariants(v);
    let sqrt_i1 = inv.i1.sqrt();
    let sqrt_i2 = inv.i2.sqrt();
    // Minimal conditional determinant after the optimal Gaussian measurement.
    let conditional =
        (sqrt_i1 + 2.0 * (inv.i1 * inv.i2).sqrt() + 2.0 * inv.i3) / (1.0 + 2.0 * sqrt_i2);
    let h = |x: f64| entropy_h(lift(x, tol_phys));
    Ok(h(sqrt_i2)? - h(s.nu_minus)? - h(s.nu_plus)? + h(conditional)?)
}

/// Gaussian quantum discord (bits), exact for two-mode squeezed thermal states.
pub fn gaussian_discord(v: &CovMatrix2Mode) -> Result<f64> {
    gaussian_discord_with(v, TOL_PHYS)
}

pub fn gaussian_discord_with(v: &CovMatrix2Mode, tol_phys: f64) -> Result<f64> {
    let d = discord_formula(v, tol_phys)?;
    if d < DISCORD_CLAMP {
        return Err(Error::Domain(format!("discord formula returned {d:e} < 0")));
    }
    Ok(d.max(0.0))
}

/// `f² − n²/2`, the first-order discord before clamping.
pub fn perturbative_discord_formula(f: f64, n_th: f64) -> Result<f64> {
    if !(f.is_finite() && f >= 0.0) || !(n_th.is_finite() && n_th >= 0.0) {
        return Err(Error::argument(format!(
            "perturbative discord needs f >= 0 and n_th >= 0, got ({f}, {n_th})"
        )));
    }
    Ok(f * f - 0.5 * n_th * n_th)
}

/// `max{0, f² − n²/2}`.
pub fn perturbative_discord(f: f64, n_th: f64) -> Result<f64> {
    Ok(perturbative_discord_formula(f, n_th)?.max(0.0))
}

/// Smallest symplectic eigenvalue ν̃₋ of the partially transposed state.
pub fn partial_transpose_nu_minus(v: &CovMatrix2Mode, tol_phys: f64) -> Result<f64> {
    physical_spectrum(v, tol_phys)?;
    Ok(symplectic_eigenvalues(&partial_transpose(v, Mode::Plus))?.nu_minus)
}

/// `−log₂(2ν̃₋)` before clamping; positive iff the state is entangled.
pub fn negativity_exponent(v: &CovMatrix2Mode, tol_phys: f64) -> Result<f64> {
    Ok(-(2.0 * partial_transpose_nu_minus(v, tol_phys)?).log2())
}

/// `E_N = max{0, −log₂(2ν̃₋)}` in bits.
pub fn log_negativity(v: &CovMatrix2Mode) -> Result<f64> {
    log_negativity_with(v, TOL_PHYS)
}

pub fn log_negativity_with(v: &CovMatrix2Mode, tol_phys: f64) -> Result<f64> {
    Ok(negativity_exponent(v, tol_phys)?.max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OnsetMeasure {
    Discord,
    Negativity,
}

/// First-order critical drive amplitude at the thermal occupation of ω_d/2.
///
/// Discord appears at `f = n/√2`, i.e. `ε₀ = √2·v·n / (L⁰_eff·ω_d)`;
/// entanglement needs `f = n`, a factor √2 more drive.
pub fn onset_amplitude(params: &ExperimentParams, measure: OnsetMeasure) -> Result<f64> {
    params.validate()?;
    let n = thermal_occupation(params.temperature, 0.5 * params.omega_d)?;
    let eps0 = SQRT_2 * params.velocity * n / (params.l_eff0 * params.omega_d);
    Ok(match measure {
        OnsetMeasure::Discord => eps0,
        OnsetMeasure::Negativity => SQRT_2 * eps0,
    })
}

/// Every correlation measure at one operating point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub f: f64,
    pub n_minus: f64,
    pub n_plus: f64,
    /// Exact Gaussian discord (bits).
    pub discord: f64,
    pub sqrt_discord: f64,
    /// `max{0, f² − n²/2}` with `n` the mean occupation.
    pub discord_perturbative: f64,
    /// Base-2 logarithmic negativity.
    pub log_negativity: f64,
    pub nu_minus: f64,
    pub nu_plus: f64,
    pub nu_tilde_minus: f64,
    /// `f` exceeds [`PERTURBATIVE_LIMIT`].
    pub beyond_perturbative: bool,
    /// `ν₋` fell inside the truncation band below ½ and was lifted.
    pub truncation_lifted: bool,
}

impl CorrelationReport {
    pub fn n_th(&self) -> f64 {
        0.5 * (self.n_minus + self.n_plus)
    }

    /// Short human-readable warnings; empty when the point is unremarkable.
    pub fn annotation(&self) -> String {
        let mut notes = Vec::new();
        if self.beyond_perturbative {
            notes.push(format!("f>{PERTURBATIVE_LIMIT}"));
        }
        if self.truncation_lifted {
            notes.push("nu_minus<1/2 (first-order truncation)".to_string());
        }
        notes.join("; ")
    }
}

/// Correlations of the output state for a given `f` and input occupations.
pub fn correlation_report(f: f64, n_minus: f64, n_plus: f64) -> Result<CorrelationReport> {
    if f >= 1.0 {
        return Err(Error::Domain(format!(
            "small parameter f = {f} >= 1: the first-order scattering map is singular"
        )));
    }
    let v = output_covariance(f, n_minus, n_plus)?;
    let tol = truncation_tolerance(f);
    let spectrum = physical_spectrum(&v, tol)?;
    let discord = gaussian_discord_with(&v, tol)?;
    let nu_tilde_minus = partial_transpose_nu_minus(&v, tol)?;
    let n_mean = 0.5 * (n_minus + n_plus);
    Ok(CorrelationReport {
        f,
        n_minus,
        n_plus,
        discord,
        sqrt_discord: discord.sqrt(),
        discord_perturbative: perturbative_discord(f, n_mean)?,
        log_negativity: (-(2.0 * nu_tilde_minus).log2()).max(0.0),
        nu_minus: spectrum.nu_minus,
        nu_plus: spectrum.nu_plus,
        nu_tilde_minus,
        beyond_perturbative: f > PERTURBATIVE_LIMIT,
        truncation_lifted: spectrum.nu_minus < 0.5 - TOL_PHYS,
    })
}

/// Full pipeline: parameters → `f`, occupations → output state → measures.
pub fn evaluate(params: &ExperimentParams) -> Result<CorrelationReport> {
    let modes = mode_pair(params)?;
    correlation_report(small_parameter(params), modes.n_minus, modes.n_plus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn entropy_values() {
        assert_eq!(entropy_h(0.5).unwrap(), 0.0);
        assert_eq!(entropy_h(1.5).unwrap(), 2.0);
        // (3/2)·log₂(3/2) + 1/2
        assert_relative_eq!(
            entropy_h(1.0).unwrap(),
            1.377_443_751_081_734_4,
            max_relative = 1e-14
        );
        assert_eq!(entropy_h(0.5 - 1e-13).unwrap(), 0.0);
        assert!(matches!(entropy_h(0.49), Err(Error::Domain(_))));
        assert!(matches!(entropy_h(f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn entropy_is_increasing() {
        let xs: Vec<f64> = (0..50).map(|k| 0.5 + 0.01 * k as f64).collect();
        for w in xs.windows(2) {
            assert!(entropy_h(w[1]).unwrap() > entropy_h(w[0]).unwrap());
        }
    }

    #[test]
    fn trivial_states_have_no_correlations() {
        let vac = CovMatrix2Mode::vacuum();
        assert_eq!(gaussian_discord(&vac).unwrap(), 0.0);
        assert_eq!(log_negativity(&vac).unwrap(), 0.0);
        for (a, b) in [(0.51, 0.6), (0.7, 0.7), (0.5, 1.3)] {
            let v = CovMatrix2Mode::diagonal([a, a, b, b]);
            assert!(gaussian_discord(&v).unwrap().abs() <= 1e-12);
            assert_eq!(log_negativity(&v).unwrap(), 0.0);
        }
    }

    #[test]
    fn discord_rejects_unphysical_and_wrong_shape() {
        let v = CovMatrix2Mode::diagonal([0.4, 0.4, 0.5, 0.5]);
        assert!(matches!(gaussian_discord(&v), Err(Error::InvalidState(_))));
        assert!(matches!(log_negativity(&v), Err(Error::InvalidState(_))));
        let skew = CovMatrix2Mode::diagonal([0.6, 0.7, 0.6, 0.6]);
        assert!(matches!(gaussian_discord(&skew), Err(Error::Shape(_))));
    }

    #[test]
    fn strict_tolerance_rejects_truncated_vacuum() {
        let v = output_covariance(0.02, 0.0, 0.0).unwrap();
        assert!(matches!(gaussian_discord(&v), Err(Error::InvalidState(_))));
        assert!(gaussian_discord_with(&v, truncation_tolerance(0.02)).is_ok());
    }

    #[test]
    fn sigma_x_and_sigma_z_forms_agree() {
        let v = output_covariance(0.03, 0.01, 0.012).unwrap();
        let s = crate::gaussian::standardize(&v).unwrap();
        assert_relative_eq!(
            gaussian_discord(&v).unwrap(),
            gaussian_discord(&s).unwrap(),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            log_negativity(&v).unwrap(),
            log_negativity(&s).unwrap(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn perturbative_discord_values() {
        assert_eq!(perturbative_discord(0.0, 0.0).unwrap(), 0.0);
        assert_relative_eq!(
            perturbative_discord(0.019635, 0.0083).unwrap(),
            3.510_882_25e-4,
            max_relative = 1e-12
        );
        for n in [0.001, 0.0083, 0.03] {
            assert!(perturbative_discord(n / SQRT_2, n).unwrap() <= 1e-18);
            assert!(perturbative_discord(1.001 * n / SQRT_2, n).unwrap() > 0.0);
        }
        assert!(matches!(
            perturbative_discord(-0.1, 0.0),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            perturbative_discord(0.1, -0.1),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn squeezed_vacuum_negativity() {
        let f: f64 = 0.02;
        let v = output_covariance(f, 0.0, 0.0).unwrap();
        let tol = truncation_tolerance(f);
        let nu = partial_transpose_nu_minus(&v, tol).unwrap();
        assert_relative_eq!(nu, (1.0 - f).powi(2) / 2.0, max_relative = 1e-13);
        let en = log_negativity_with(&v, tol).unwrap();
        assert_relative_eq!(en, -2.0 * (1.0 - f).log2(), max_relative = 1e-12);
        assert!((en - 0.0583).abs() < 1e-4);
    }

    #[test]
    fn negativity_from_either_partial_transpose() {
        let v = output_covariance(0.03, 0.01, 0.02).unwrap();
        let direct = partial_transpose_nu_minus(&v, TOL_PHYS).unwrap();
        for mode in [Mode::Minus, Mode::Plus] {
            let t = partial_transpose(&v, mode);
            let s = symplectic_eigenvalues(&t).unwrap();
            assert_relative_eq!(s.nu_minus, direct, max_relative = 1e-13);
        }
    }

    #[test]
    fn onset_amplitudes() {
        let p = ExperimentParams::reference();
        let d = onset_amplitude(&p, OnsetMeasure::Discord).unwrap();
        let e = onset_amplitude(&p, OnsetMeasure::Negativity).unwrap();
        // √2·v·n/(L·ω_d) with n = 1/(exp(ħω_d/2k_BT) − 1) at 50 mK.
        assert_relative_eq!(d, 0.044_859_377_144_72, max_relative = 1e-9);
        assert!((d - 0.0448).abs() / 0.0448 < 0.005);
        assert!((e - 0.0634).abs() / 0.0634 < 0.005);
        assert_relative_eq!(e / d, SQRT_2, max_relative = 1e-15);
        let cold = p.with_temperature(0.0);
        assert_eq!(onset_amplitude(&cold, OnsetMeasure::Discord).unwrap(), 0.0);
        assert_eq!(
            onset_amplitude(&cold, OnsetMeasure::Negativity).unwrap(),
            0.0
        );
        let mut bad = p;
        bad.l_eff0 = 0.0;
        assert!(matches!(
            onset_amplitude(&bad, OnsetMeasure::Discord),
            Err(Error::Argument(_))
        ));
        let mut bad = p;
        bad.omega_d = 0.0;
        assert!(matches!(
            onset_amplitude(&bad, OnsetMeasure::Negativity),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn report_invariants() {
        let r = evaluate(&ExperimentParams::reference()).unwrap();
        assert_eq!(r.sqrt_discord, r.discord.sqrt());
        assert!(r.discord > 0.0 && r.log_negativity >= 0.0);
        assert!(!r.beyond_perturbative && !r.truncation_lifted);
        assert!(r.annotation().is_empty());

        let zero = evaluate(&ExperimentParams::reference().with_epsilon(0.0)).unwrap();
        assert!(zero.discord <= 1e-12);
        assert_eq!(zero.discord_perturbative, 0.0);
        assert_eq!(zero.log_negativity, 0.0);

        let hot_drive = evaluate(&ExperimentParams::reference().with_epsilon(0.5)).unwrap();
        assert!(hot_drive.beyond_perturbative);
        assert!(hot_drive.annotation().contains("f>0.05"));

        let cold = evaluate(&ExperimentParams::reference().with_temperature(0.0)).unwrap();
        assert!(cold.truncation_lifted);

        let huge = ExperimentParams::reference().with_epsilon(10.0);
        assert!(matches!(evaluate(&huge), Err(Error::Domain(_))));
    }
}
