//! From experimental knobs to the output covariance matrix.
//!
//! The SQUID boundary is reduced to one effective length `L⁰_eff`; a drive
//! of normalized amplitude ε modulates it by `δL_eff = ε·L⁰_eff`. To first
//! order in the small parameter `f = ε·L⁰_eff·ω_d/(2v)` the outgoing fields
//! are `b_± = −a_± − i f a†_∓`.

use std::f64::consts::PI;

use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{CovMatrix2Mode, TOL_PHYS};

/// Reduced Planck constant (J·s), CODATA 2018.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant (J/K), CODATA 2018.
pub const K_B: f64 = 1.380_649e-23;

/// Above this value of `f` results carry a perturbative-regime warning.
pub const PERTURBATIVE_LIMIT: f64 = 0.05;

/// Physical parameters of one DCE operating point, in SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentParams {
    /// Phase velocity in the waveguide (m/s).
    pub velocity: f64,
    /// Drive angular frequency ω_d (rad/s).
    pub omega_d: f64,
    /// Effective length at zero drive (m).
    pub l_eff0: f64,
    /// Normalized drive amplitude ε.
    pub epsilon: f64,
    /// Bath temperature (K).
    pub temperature: f64,
    /// Detuning δω of the sidebands from ω_d/2 (rad/s).
    pub detuning: f64,
    /// Characteristic impedance (Ω). Stored for provenance only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub impedance: Option<f64>,
}

impl ExperimentParams {
    pub fn new(
        velocity: f64,
        omega_d: f64,
        l_eff0: f64,
        epsilon: f64,
        temperature: f64,
    ) -> Result<Self> {
        let p = Self {
            velocity,
            omega_d,
            l_eff0,
            epsilon,
            temperature,
            detuning: 0.0,
            impedance: None,
        };
        p.validate()?;
        Ok(p)
    }

    /// Waveguide used in the reference experiment: v = 1.2·10⁸ m/s,
    /// ω_d = 2π·10 GHz, L⁰_eff = 0.5 mm.
    pub fn reference_waveguide(epsilon: f64, temperature: f64) -> Self {
        Self {
            velocity: 1.2e8,
            omega_d: 2.0 * PI * 10e9,
            l_eff0: 0.5e-3,
            epsilon,
            temperature,
            detuning: 0.0,
            impedance: None,
        }
    }

    /// Reference waveguide at ε = 0.15 and T = 50 mK.
    pub fn reference() -> Self {
        Self::reference_waveguide(0.15, 0.050)
    }

    pub fn with_epsilon(self, epsilon: f64) -> Self {
        Self { epsilon, ..self }
    }

    pub fn with_temperature(self, temperature: f64) -> Self {
        Self {
            temperature,
            ..self
        }
    }

    pub fn with_detuning(self, detuning: f64) -> Self {
        Self { detuning, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("velocity", self.velocity),
            ("drive frequency", self.omega_d),
            ("effective length", self.l_eff0),
        ];
        for (name, x) in positive {
            if !(x.is_finite() && x > 0.0) {
                return Err(Error::argument(format!("{name} must be positive, got {x}")));
            }
        }
        for (name, x) in [("epsilon", self.epsilon), ("temperature", self.temperature)] {
            if !(x.is_finite() && x >= 0.0) {
                return Err(Error::argument(format!(
                    "{name} must be non-negative, got {x}"
                )));
            }
        }
        if !(self.detuning.is_finite() && self.detuning.abs() < 0.5 * self.omega_d) {
            return Err(Error::argument(format!(
                "detuning {} rad/s outside (-omega_d/2, omega_d/2)",
                self.detuning
            )));
        }
        Ok(())
    }
}

/// `f = ε·L⁰_eff·ω_d / (2v) = v_eff / (2v)`.
pub fn small_parameter(params: &ExperimentParams) -> f64 {
    params.epsilon * params.l_eff0 * params.omega_d / (2.0 * params.velocity)
}

/// Drive amplitude that produces a given `f`; inverse of [`small_parameter`].
pub fn epsilon_for_small_parameter(params: &ExperimentParams, f: f64) -> f64 {
    2.0 * params.velocity * f / (params.l_eff0 * params.omega_d)
}

/// Bose–Einstein occupation `1 / (exp(ħω/k_B T) − 1)`.
pub fn thermal_occupation(temperature: f64, omega: f64) -> Result<f64> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::argument(format!(
            "mode frequency must be positive, got {omega}"
        )));
    }
    if !(temperature.is_finite() && temperature >= 0.0) {
        return Err(Error::argument(format!(
            "temperature must be non-negative, got {temperature}"
        )));
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 / (HBAR * omega / (K_B * temperature)).exp_m1())
}

/// Temperature at which a mode of frequency `omega` holds `n` thermal photons.
pub fn temperature_for_occupation(n: f64, omega: f64) -> Result<f64> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::argument(format!(
            "mode frequency must be positive, got {omega}"
        )));
    }
    if !(n.is_finite() && n >= 0.0) {
        return Err(Error::argument(format!(
            "occupation must be non-negative, got {n}"
        )));
    }
    if n == 0.0 {
        return Ok(0.0);
    }
    Ok(HBAR * omega / (K_B * (1.0 / n).ln_1p()))
}

/// The correlated sideband pair `ω_± = ω_d/2 ± δω` and its thermal occupations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModePair {
    pub omega_minus: f64,
    pub omega_plus: f64,
    pub n_minus: f64,
    pub n_plus: f64,
}

pub fn mode_pair(params: &ExperimentParams) -> Result<ModePair> {
    params.validate()?;
    let half = 0.5 * params.omega_d;
    let omega_minus = half - params.detuning;
    // ω₊ is taken as the complement so that the pair sums to ω_d exactly.
    let omega_plus = params.omega_d - omega_minus;
    Ok(ModePair {
        omega_minus,
        omega_plus,
        n_minus: thermal_occupation(params.temperature, omega_minus)?,
        n_plus: thermal_occupation(params.temperature, omega_plus)?,
    })
}

/// Linear map `R = S·R₀` on `(q₋, p₋, q₊, p₊)` implementing
/// `q_± = −(q₀± + f p₀∓)`, `p_± = −(p₀± + f q₀∓)`.
pub fn scattering_matrix(f: f64) -> Matrix4<f64> {
    #[rustfmt::skip]
    let s = Matrix4::new(
        1.0, 0.0, 0.0, f,
        0.0, 1.0, f, 0.0,
        0.0, f, 1.0, 0.0,
        f, 0.0, 0.0, 1.0,
    );
    -s
}

fn check_occupations(n_minus: f64, n_plus: f64) -> Result<()> {
    for x in [n_minus, n_plus] {
        if !(x.is_finite() && x >= 0.0) {
            return Err(Error::argument(format!(
                "thermal occupation must be non-negative, got {x}"
            )));
        }
    }
    Ok(())
}

/// Incoming thermal state `V₀ = ½ diag(1+2n₋, 1+2n₋, 1+2n₊, 1+2n₊)`.
pub fn input_covariance(n_minus: f64, n_plus: f64) -> Result<CovMatrix2Mode> {
    check_occupations(n_minus, n_plus)?;
    let a = 0.5 + n_minus;
    let b = 0.5 + n_plus;
    Ok(CovMatrix2Mode::diagonal([a, a, b, b]))
}

/// Outgoing state `V = ½ (A, C; Cᵀ, B)` with
/// `A = [1+2n₋ + f²(1+2n₊)]𝟙`, `B = [1+2n₊ + f²(1+2n₋)]𝟙`,
/// `C = 2f(1+n₊+n₋)σ_x`.
pub fn output_covariance(f: f64, n_minus: f64, n_plus: f64) -> Result<CovMatrix2Mode> {
    if !(f.is_finite() && f >= 0.0) {
        return Err(Error::argument(format!(
            "small parameter must be non-negative, got {f}"
        )));
    }
    check_occupations(n_minus, n_plus)?;
    let f2 = f * f;
    let a = 0.5 * (1.0 + 2.0 * n_minus + f2 * (1.0 + 2.0 * n_plus));
    let b = 0.5 * (1.0 + 2.0 * n_plus + f2 * (1.0 + 2.0 * n_minus));
    let c = f * (1.0 + n_plus + n_minus);
    CovMatrix2Mode::from_blocks(
        Matrix2::from_diagonal_element(a),
        Matrix2::from_diagonal_element(b),
        Matrix2::new(0.0, c, c, 0.0),
    )
}

/// Uncertainty-relation slack appropriate to the first-order scattering map.
///
/// `b = −a − i f a†` preserves the commutator only to O(f²); the output
/// obeys `ν₋ ≥ (1 − f²)/2`, so a deficit of up to `f²/2` below the vacuum
/// value is truncation error rather than unphysics.
pub fn truncation_tolerance(f: f64) -> f64 {
    0.5 * f * f + TOL_PHYS
}

/// Smallest occupation at which the output state satisfies `ν₋ ≥ 1/2`
/// exactly (equal occupations): `n = f² / (2(1 − f²))`.
pub fn truncation_floor(f: f64) -> f64 {
    let f2 = f * f;
    f2 / (2.0 * (1.0 - f2))
}
