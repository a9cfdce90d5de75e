//! Conversions between the CLI's human units and SI.

use std::f64::consts::TAU;

use dce_core::Variable;

pub fn ghz_to_rad_per_s(ghz: f64) -> f64 {
    TAU * (ghz * 1e9)
}

pub fn mk_to_k(mk: f64) -> f64 {
    mk / 1e3
}

pub fn mm_to_m(mm: f64) -> f64 {
    mm / 1e3
}

/// A swept or bisected quantity and its display unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Quantity {
    Epsilon,
    /// Temperature in mK.
    Temp,
    /// Thermal occupation of ω_d/2.
    Nth,
}

impl Quantity {
    pub fn variable(self) -> Variable {
        match self {
            Quantity::Epsilon => Variable::Epsilon,
            Quantity::Temp => Variable::Temperature,
            Quantity::Nth => Variable::NTh,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Epsilon => "epsilon",
            Quantity::Temp => "temp_mk",
            Quantity::Nth => "n_th",
        }
    }

    pub fn to_si(self, x: f64) -> f64 {
        match self {
            Quantity::Temp => mk_to_k(x),
            _ => x,
        }
    }

    pub fn to_human(self, x: f64) -> f64 {
        match self {
            Quantity::Temp => x * 1e3,
            _ => x,
        }
    }
}
