//! Quantum correlations of dynamical-Casimir radiation from a
//! SQUID-terminated superconducting waveguide.
//!
//! The crate maps drive and bath parameters to the two-mode Gaussian state
//! of the emitted sideband pair and evaluates Gaussian quantum discord,
//! its first-order closed form, and logarithmic negativity, together with
//! sweeps and bisection for the points where each measure vanishes.

pub mod correlations;
pub mod error;
pub mod gaussian;
pub mod model;
pub mod sweep;

pub use correlations::{evaluate, CorrelationReport, OnsetMeasure};
pub use error::{Error, Result};
pub use gaussian::{BlockInvariants, CovMatrix2Mode, Mode, SymplecticForm, SymplecticSpectrum};
pub use model::{ExperimentParams, ModePair};
pub use sweep::{
    find_threshold, run_sweep, threshold_ratio, Measure, SweepResult, SweepRow, SweepSpec,
    ThresholdResult, Variable,
};
