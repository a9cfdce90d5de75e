//! Linear parameter sweeps and bisection for the vanishing points of the
//! correlation measures.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correlations::{
    correlation_report, discord_formula, evaluate, negativity_exponent,
    perturbative_discord_formula, CorrelationReport,
};
use crate::error::{Error, Result};
use crate::model::{
    epsilon_for_small_parameter, mode_pair, output_covariance, small_parameter,
    temperature_for_occupation, truncation_tolerance, ExperimentParams,
};

/// Bisection stops once the bracket is narrower than this (K, or dimensionless).
pub const DEFAULT_TOL: f64 = 1e-6;
pub const MAX_ITERATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variable {
    /// Normalized drive amplitude ε.
    Epsilon,
    /// Bath temperature (K).
    Temperature,
    /// Thermal occupation of both modes, bypassing the temperature.
    NTh,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    /// Exact Gaussian discord.
    Discord,
    SqrtDiscord,
    /// Closed form `f² − n²/2`.
    PerturbativeDiscord,
    LogNegativity,
}

impl Measure {
    pub const ALL: [Measure; 4] = [
        Measure::Discord,
        Measure::SqrtDiscord,
        Measure::PerturbativeDiscord,
        Measure::LogNegativity,
    ];

    pub fn of(self, report: &CorrelationReport) -> f64 {
        match self {
            Measure::Discord => report.discord,
            Measure::SqrtDiscord => report.sqrt_discord,
            Measure::PerturbativeDiscord => report.discord_perturbative,
            Measure::LogNegativity => report.log_negativity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub base: ExperimentParams,
    pub variable: Variable,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub measures: Vec<Measure>,
}

impl SweepSpec {
    pub fn new(
        base: ExperimentParams,
        variable: Variable,
        start: f64,
        stop: f64,
        points: usize,
    ) -> Self {
        Self {
            base,
            variable,
            start,
            stop,
            points,
            measures: Measure::ALL.to_vec(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(Error::argument(format!(
                "sweep range must satisfy start < stop, got [{}, {}]",
                self.start, self.stop
            )));
        }
        if self.start < 0.0 {
            return Err(Error::argument(format!(
                "{:?} cannot be negative",
                self.variable
            )));
        }
        if self.points < 2 {
            return Err(Error::argument(format!(
                "sweep needs at least 2 points, got {}",
                self.points
            )));
        }
        Ok(())
    }

    /// Linearly spaced abscissae; the last one is exactly `stop`.
    pub fn grid(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * (i as f64 / last)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    /// Swept variable in SI units.
    pub value: f64,
    pub epsilon: f64,
    /// Bath temperature (K); for occupation sweeps, the temperature that
    /// gives this occupation at ω_d/2.
    pub temperature: f64,
    pub report: CorrelationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
    pub annotations: Vec<String>,
}

/// Evaluates one sweep point through the public compute path.
pub fn sweep_point(base: &ExperimentParams, variable: Variable, value: f64) -> Result<SweepRow> {
    match variable {
        Variable::Epsilon => {
            let params = base.with_epsilon(value);
            Ok(SweepRow {
                value,
                epsilon: value,
                temperature: params.temperature,
                report: evaluate(&params)?,
            })
        }
        Variable::Temperature => {
            let params = base.with_temperature(value);
            Ok(SweepRow {
                value,
                epsilon: params.epsilon,
                temperature: value,
                report: evaluate(&params)?,
            })
        }
        Variable::NTh => {
            base.validate()?;
            let report = correlation_report(small_parameter(base), value, value)?;
            Ok(SweepRow {
                value,
                epsilon: base.epsilon,
                temperature: temperature_for_occupation(value, 0.5 * base.omega_d)?,
                report,
            })
        }
    }
}

/// Runs every grid point (in parallel) and assembles rows in grid order.
///
/// The first failing point aborts the sweep; the error carries the rows
/// that precede it.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let results: Vec<Result<SweepRow>> = spec
        .grid()
        .par_iter()
        .map(|&x| sweep_point(&spec.base, spec.variable, x))
        .collect();

    let mut rows = Vec::with_capacity(results.len());
    for (index, r) in results.into_iter().enumerate() {
        match r {
            Ok(row) => rows.push(row),
            Err(e) => {
                return Err(Error::PartialSweep {
                    index,
                    completed: rows,
                    source: Box::new(e),
                })
            }
        }
    }
    let annotations = summarize(&rows);
    Ok(SweepResult {
        spec: spec.clone(),
        rows,
        annotations,
    })
}

fn summarize(rows: &[SweepRow]) -> Vec<String> {
    let mut notes = Vec::new();
    let beyond = rows.iter().filter(|r| r.report.beyond_perturbative).count();
    if beyond > 0 {
        notes.push(format!(
            "{beyond} rows have f > 0.05 (outside the perturbative regime)"
        ));
    }
    let lifted = rows.iter().filter(|r| r.report.truncation_lifted).count();
    if lifted > 0 {
        notes.push(format!(
            "{lifted} rows have nu_minus < 1/2 within the first-order truncation band"
        ));
    }
    notes
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub measure: Measure,
    pub variable: Variable,
    /// Zero crossing in SI units of the variable.
    pub critical_value: f64,
    /// Final bracket; the unclamped measure changes sign across it.
    pub bracket: (f64, f64),
    pub iterations: usize,
    /// Unclamped measure at `critical_value`.
    pub residual: f64,
}

fn state_at(base: &ExperimentParams, variable: Variable, x: f64) -> Result<(f64, f64, f64)> {
    let params = match variable {
        Variable::Epsilon => base.with_epsilon(x),
        Variable::Temperature => base.with_temperature(x),
        Variable::NTh => {
            base.validate()?;
            if !(x.is_finite() && x >= 0.0) {
                return Err(Error::argument(format!(
                    "occupation must be non-negative, got {x}"
                )));
            }
            return Ok((small_parameter(base), x, x));
        }
    };
    let modes = mode_pair(&params)?;
    Ok((small_parameter(&params), modes.n_minus, modes.n_plus))
}

/// The measure before the `max{0, ·}` clamp; it changes sign where the
/// clamped measure starts to vanish.
pub fn unclamped_measure(
    base: &ExperimentParams,
    measure: Measure,
    variable: Variable,
    x: f64,
) -> Result<f64> {
    let (f, n_minus, n_plus) = state_at(base, variable, x)?;
    if f >= 1.0 {
        return Err(Error::Domain(format!("small parameter f = {f} >= 1")));
    }
    let tol = truncation_tolerance(f);
    match measure {
        Measure::Discord | Measure::SqrtDiscord => {
            discord_formula(&output_covariance(f, n_minus, n_plus)?, tol)
        }
        Measure::PerturbativeDiscord => perturbative_discord_formula(f, 0.5 * (n_minus + n_plus)),
        Measure::LogNegativity => negativity_exponent(&output_covariance(f, n_minus, n_plus)?, tol),
    }
}

/// Bisects the unclamped measure on `bracket` until it is narrower than `tol`.
///
/// The measure must be strictly positive at one end and strictly negative
/// at the other.
pub fn find_threshold(
    base: &ExperimentParams,
    measure: Measure,
    variable: Variable,
    bracket: (f64, f64),
    tol: f64,
) -> Result<ThresholdResult> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::argument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let (mut lo, mut hi) = bracket;
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(Error::argument(format!("invalid bracket [{lo}, {hi}]")));
    }
    let g = |x: f64| unclamped_measure(base, measure, variable, x);
    let g_lo = g(lo)?;
    let g_hi = g(hi)?;
    let straddles = (g_lo > 0.0 && g_hi < 0.0) || (g_lo < 0.0 && g_hi > 0.0);
    if !straddles {
        return Err(Error::Bracketing {
            lo,
            hi,
            f_lo: g_lo,
            f_hi: g_hi,
        });
    }
    let lo_positive = g_lo > 0.0;

    let mut iterations = 0;
    while hi - lo > tol {
        if iterations == MAX_ITERATIONS {
            return Err(Error::Convergence { iterations });
        }
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // Bracket is below floating-point resolution.
            return Err(Error::Convergence { iterations });
        }
        let g_mid = g(mid)?;
        if g_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (g_mid > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let critical_value = 0.5 * (lo + hi);
    Ok(ThresholdResult {
        measure,
        variable,
        critical_value,
        bracket: (lo, hi),
        iterations,
        residual: g(critical_value)?,
    })
}

/// Bracket that contains the crossing for the usual operating points.
///
/// Along ε the upper end is the drive giving `f = 4n` (capped at 0.9);
/// with no thermal photons this collapses to `(0, 0)`.
pub fn default_bracket(base: &ExperimentParams, variable: Variable) -> Result<(f64, f64)> {
    match variable {
        Variable::Epsilon => {
            let modes = mode_pair(base)?;
            let n = modes.n_minus.max(modes.n_plus);
            let f_hi = (4.0 * n).min(0.9);
            Ok((0.0, epsilon_for_small_parameter(base, f_hi)))
        }
        Variable::Temperature => Ok((1e-3, 1.0)),
        Variable::NTh => Ok((0.0, 1.0)),
    }
}

/// `ε_crit(negativity) / ε_crit(discord)` from two bisections, with the
/// discord crossing taken from the closed form `f² − n²/2`.
pub fn threshold_ratio(base: &ExperimentParams) -> Result<f64> {
    threshold_ratio_for(base, Measure::PerturbativeDiscord)
}

pub fn threshold_ratio_for(base: &ExperimentParams, discord: Measure) -> Result<f64> {
    let bracket = default_bracket(base, Variable::Epsilon)?;
    let neg = find_threshold(
        base,
        Measure::LogNegativity,
        Variable::Epsilon,
        bracket,
        DEFAULT_TOL,
    )?;
    let dis = find_threshold(base, discord, Variable::Epsilon, bracket, DEFAULT_TOL)?;
    Ok(neg.critical_value / dis.critical_value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> ExperimentParams {
        ExperimentParams::reference()
    }

    #[test]
    fn grid_is_linear_and_ends_on_stop() {
        let spec = SweepSpec::new(reference(), Variable::Epsilon, 0.0, 0.25, 6);
        let g = spec.grid();
        assert_eq!(g.len(), 6);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[5], 0.25);
        assert!((g[2] - 0.1).abs() < 1e-16);
    }

    #[test]
    fn invalid_specs() {
        let base = reference();
        for spec in [
            SweepSpec::new(base, Variable::Epsilon, 0.2, 0.1, 10),
            SweepSpec::new(base, Variable::Epsilon, 0.0, 0.1, 1),
            SweepSpec::new(base, Variable::Temperature, -0.01, 0.1, 10),
        ] {
            assert!(matches!(run_sweep(&spec), Err(Error::Argument(_))));
        }
    }

    #[test]
    fn undriven_occupation_sweep_is_all_zero() {
        let spec = SweepSpec::new(reference().with_epsilon(0.0), Variable::NTh, 0.0, 0.05, 11);
        let res = run_sweep(&spec).unwrap();
        assert_eq!(res.rows.len(), 11);
        for row in &res.rows {
            for m in Measure::ALL {
                assert_eq!(m.of(&row.report), 0.0);
            }
        }
    }

    #[test]
    fn partial_result_on_failure() {
        // ε = 8 gives f ≈ 1.05: the scattering map is singular there.
        let spec = SweepSpec::new(reference(), Variable::Epsilon, 0.0, 8.0, 5);
        match run_sweep(&spec) {
            Err(Error::PartialSweep {
                index,
                completed,
                source,
            }) => {
                assert_eq!(index, 4);
                assert_eq!(completed.len(), 4);
                assert!(matches!(*source, Error::Domain(_)));
            }
            other => panic!("expected partial sweep error, got {other:?}"),
        }
    }

    #[test]
    fn annotations_flag_regimes() {
        let spec = SweepSpec::new(reference(), Variable::Epsilon, 0.0, 0.5, 11);
        let res = run_sweep(&spec).unwrap();
        assert!(res.annotations.iter().any(|a| a.contains("f > 0.05")));
        let cold = SweepSpec::new(reference(), Variable::Temperature, 0.005, 0.08, 11);
        let res = run_sweep(&cold).unwrap();
        assert!(res.annotations.iter().any(|a| a.contains("truncation")));
    }

    #[test]
    fn bracketing_and_argument_errors() {
        let base = reference();
        let r = find_threshold(
            &base,
            Measure::LogNegativity,
            Variable::Temperature,
            (0.07, 0.08),
            DEFAULT_TOL,
        );
        assert!(matches!(r, Err(Error::Bracketing { .. })));
        let r = find_threshold(
            &base,
            Measure::LogNegativity,
            Variable::Temperature,
            (0.08, 0.04),
            DEFAULT_TOL,
        );
        assert!(matches!(r, Err(Error::Argument(_))));
        let r = find_threshold(
            &base,
            Measure::LogNegativity,
            Variable::Temperature,
            (0.04, 0.08),
            0.0,
        );
        assert!(matches!(r, Err(Error::Argument(_))));
    }

    #[test]
    fn unreachable_tolerance_is_a_convergence_error() {
        let r = find_threshold(
            &reference(),
            Measure::PerturbativeDiscord,
            Variable::NTh,
            (0.0, 0.1),
            1e-300,
        );
        assert!(matches!(r, Err(Error::Convergence { .. })), "{r:?}");
    }

    #[test]
    fn zero_temperature_ratio_is_undefined() {
        let r = threshold_ratio(&reference().with_temperature(0.0));
        assert!(matches!(r, Err(Error::Bracketing { .. })));
    }

    #[test]
    fn threshold_brackets_straddle_zero() {
        let base = reference();
        let t = find_threshold(
            &base,
            Measure::LogNegativity,
            Variable::Temperature,
            (0.04, 0.08),
            DEFAULT_TOL,
        )
        .unwrap();
        let (lo, hi) = t.bracket;
        assert!(hi - lo <= DEFAULT_TOL);
        let g_lo = unclamped_measure(&base, t.measure, t.variable, lo).unwrap();
        let g_hi = unclamped_measure(&base, t.measure, t.variable, hi).unwrap();
        assert!(g_lo > 0.0 && g_hi < 0.0);
        assert!(t.residual.abs() < 1e-4);
    }
}
