//! CSV and JSON serialization of reports, sweeps and thresholds.

use serde::{Deserialize, Serialize};

use dce_core::sweep::SweepRow;
use dce_core::{CorrelationReport, ThresholdResult};

use crate::units::Quantity;

pub const SWEEP_COLUMNS: [&str; 13] = [
    "variable_value",
    "epsilon",
    "temp_mk",
    "f",
    "n_th",
    "discord",
    "sqrt_discord",
    "discord_perturbative",
    "log_negativity",
    "nu_minus",
    "nu_plus",
    "nu_tilde_minus",
    "annotation",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variable_value: Option<f64>,
    pub epsilon: f64,
    pub temp_mk: f64,
    pub f: f64,
    pub n_th: f64,
    pub discord: f64,
    pub sqrt_discord: f64,
    pub discord_perturbative: f64,
    pub log_negativity: f64,
    pub nu_minus: f64,
    pub nu_plus: f64,
    pub nu_tilde_minus: f64,
    pub annotation: String,
}

impl Row {
    pub fn from_report(
        variable_value: Option<f64>,
        epsilon: f64,
        temperature: f64,
        r: &CorrelationReport,
    ) -> Self {
        Self {
            variable_value,
            epsilon,
            temp_mk: temperature * 1e3,
            f: r.f,
            n_th: r.n_th(),
            discord: r.discord,
            sqrt_discord: r.sqrt_discord,
            discord_perturbative: r.discord_perturbative,
            log_negativity: r.log_negativity,
            nu_minus: r.nu_minus,
            nu_plus: r.nu_plus,
            nu_tilde_minus: r.nu_tilde_minus,
            annotation: r.annotation(),
        }
    }

    pub fn from_sweep(q: Quantity, row: &SweepRow) -> Self {
        Self::from_report(
            Some(q.to_human(row.value)),
            row.epsilon,
            row.temperature,
            &row.report,
        )
    }

    fn numbers(&self) -> [f64; 11] {
        [
            self.epsilon,
            self.temp_mk,
            self.f,
            self.n_th,
            self.discord,
            self.sqrt_discord,
            self.discord_perturbative,
            self.log_negativity,
            self.nu_minus,
            self.nu_plus,
            self.nu_tilde_minus,
        ]
    }
}

/// 17 significant digits; parses back to the same double.
pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn csv_bytes(header: &[&str], records: impl IntoIterator<Item = Vec<String>>) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    for r in records {
        w.write_record(&r).expect("writing to memory");
    }
    w.into_inner().expect("flushing to memory")
}

pub fn rows_csv(rows: &[Row]) -> Vec<u8> {
    let with_variable = rows.first().is_some_and(|r| r.variable_value.is_some());
    let header: &[&str] = if with_variable {
        &SWEEP_COLUMNS
    } else {
        &SWEEP_COLUMNS[1..]
    };
    csv_bytes(
        header,
        rows.iter().map(|r| {
            let mut rec: Vec<String> = r.variable_value.iter().map(|&v| fmt_float(v)).collect();
            rec.extend(r.numbers().iter().map(|&x| fmt_float(x)));
            rec.push(r.annotation.clone());
            rec
        }),
    )
}

/// Threshold in the CLI's human units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdRecord {
    pub measure: String,
    pub variable: String,
    pub critical_value: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub iterations: usize,
    pub residual: f64,
}

impl ThresholdRecord {
    pub fn new(measure: &str, q: Quantity, t: &ThresholdResult) -> Self {
        Self {
            measure: measure.to_string(),
            variable: q.name().to_string(),
            critical_value: q.to_human(t.critical_value),
            bracket_lo: q.to_human(t.bracket.0),
            bracket_hi: q.to_human(t.bracket.1),
            iterations: t.iterations,
            residual: t.residual,
        }
    }
}

pub fn threshold_csv(t: &ThresholdRecord) -> Vec<u8> {
    csv_bytes(
        &[
            "measure",
            "variable",
            "critical_value",
            "bracket_lo",
            "bracket_hi",
            "iterations",
            "residual",
        ],
        [vec![
            t.measure.clone(),
            t.variable.clone(),
            fmt_float(t.critical_value),
            fmt_float(t.bracket_lo),
            fmt_float(t.bracket_hi),
            t.iterations.to_string(),
            fmt_float(t.residual),
        ]],
    )
}

pub fn json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("serializable");
    out.push(b'\n');
    out
}
