mod error;
mod output;
mod plot;
mod units;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dce_core::sweep::{default_bracket, DEFAULT_TOL};
use dce_core::{evaluate, find_threshold, run_sweep, ExperimentParams, Measure, SweepSpec};

use error::CliError;
use output::{Row, ThresholdRecord};
use units::{ghz_to_rad_per_s, mk_to_k, mm_to_m, Quantity};

#[derive(Parser, Debug)]
#[command(
    name = "dce",
    version,
    about = "Quantum correlations of dynamical Casimir radiation in a SQUID-terminated waveguide"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Correlations at a single operating point.
    #[command(allow_negative_numbers = true)]
    Compute {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sweep one parameter over a linear grid.
    #[command(allow_negative_numbers = true)]
    Sweep {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "var", value_enum)]
        var: Quantity,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Bisect for the point where a measure vanishes.
    #[command(allow_negative_numbers = true)]
    Threshold {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "var", value_enum)]
        var: Quantity,
        #[arg(long, value_enum)]
        measure: MeasureArg,
        /// Bracket `lo,hi` in the units of --var (mK for temp).
        #[arg(long, value_parser = parse_bracket)]
        bracket: Option<(f64, f64)>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Correlations against drive amplitude, ε from 0 to 0.25 at 50 mK.
    #[command(allow_negative_numbers = true)]
    Figure1(FigureArgs),
    /// Correlations against thermal occupation, n_th from 0 to 0.05 at ε = 0.15.
    #[command(allow_negative_numbers = true)]
    Figure2(FigureArgs),
}

/// Operating point in human units. Defaults are the reference waveguide
/// at ε = 0.15, T = 50 mK.
#[derive(Args, Debug, Clone)]
struct ParamArgs {
    /// Phase velocity (m/s).
    #[arg(long, default_value_t = 1.2e8)]
    velocity: f64,
    /// Drive frequency ω_d/2π (GHz).
    #[arg(long, default_value_t = 10.0)]
    drive_ghz: f64,
    /// Effective length at zero drive (mm).
    #[arg(long, default_value_t = 0.5)]
    leff_mm: f64,
    #[arg(long, default_value_t = 0.15)]
    epsilon: f64,
    /// Bath temperature (mK).
    #[arg(long, default_value_t = 50.0)]
    temp_mk: f64,
    /// Sideband detuning δω/2π (GHz).
    #[arg(long, default_value_t = 0.0)]
    detuning_ghz: f64,
}

impl ParamArgs {
    fn to_si(&self) -> Result<ExperimentParams, CliError> {
        let p = ExperimentParams {
            velocity: self.velocity,
            omega_d: ghz_to_rad_per_s(self.drive_ghz),
            l_eff0: mm_to_m(self.leff_mm),
            epsilon: self.epsilon,
            temperature: mk_to_k(self.temp_mk),
            detuning: ghz_to_rad_per_s(self.detuning_ghz),
            impedance: None,
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct FigureArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    from: Option<f64>,
    #[arg(long)]
    to: Option<f64>,
    #[arg(long, default_value_t = 200)]
    points: usize,
    #[command(flatten)]
    out: OutputArgs,
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeasureArg {
    /// Exact Gaussian discord.
    Discord,
    Negativity,
    /// Closed form f² − n²/2.
    PerturbativeDiscord,
}

impl MeasureArg {
    fn measure(self) -> Measure {
        match self {
            MeasureArg::Discord => Measure::Discord,
            MeasureArg::Negativity => Measure::LogNegativity,
            MeasureArg::PerturbativeDiscord => Measure::PerturbativeDiscord,
        }
    }

    fn name(self) -> &'static str {
        match self {
            MeasureArg::Discord => "discord",
            MeasureArg::Negativity => "negativity",
            MeasureArg::PerturbativeDiscord => "perturbative_discord",
        }
    }
}

fn parse_bracket(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(',').ok_or("expected `lo,hi`")?;
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(lo)?, parse(hi)?))
}

#[derive(Serialize)]
struct SweepSpecRecord {
    command: &'static str,
    variable: &'static str,
    from: f64,
    to: f64,
    points: usize,
    velocity: f64,
    drive_ghz: f64,
    leff_mm: f64,
    epsilon: f64,
    temp_mk: f64,
    detuning_ghz: f64,
    annotations: Vec<String>,
}

#[derive(Serialize)]
struct SweepDocument<'a> {
    spec: SweepSpecRecord,
    rows: &'a [Row],
}

fn emit(out: &OutputArgs, bytes: &[u8]) -> Result<(), CliError> {
    match &out.out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io {
                    path: "<stdout>".into(),
                    message: e.to_string(),
                })
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    command: &'static str,
    params: &ParamArgs,
    var: Quantity,
    from: f64,
    to: f64,
    points: usize,
    out: &OutputArgs,
    plot: Option<&PathBuf>,
) -> Result<(), CliError> {
    let base = params.to_si()?;
    let spec = SweepSpec::new(base, var.variable(), var.to_si(from), var.to_si(to), points);
    let result = run_sweep(&spec)?;
    let rows: Vec<Row> = result
        .rows
        .iter()
        .map(|r| Row::from_sweep(var, r))
        .collect();
    for note in &result.annotations {
        eprintln!("warning: {note}");
    }
    let bytes = match out.format {
        Format::Csv => output::rows_csv(&rows),
        Format::Json => output::json_bytes(&SweepDocument {
            spec: SweepSpecRecord {
                command,
                variable: var.name(),
                from,
                to,
                points,
                velocity: params.velocity,
                drive_ghz: params.drive_ghz,
                leff_mm: params.leff_mm,
                epsilon: params.epsilon,
                temp_mk: params.temp_mk,
                detuning_ghz: params.detuning_ghz,
                annotations: result.annotations.clone(),
            },
            rows: &rows,
        }),
    };
    if let Some(path) = plot {
        plot::render(path, var.name(), &rows)?;
    }
    emit(out, &bytes)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compute { params, out } => {
            let p = params.to_si()?;
            let row = Row::from_report(None, p.epsilon, p.temperature, &evaluate(&p)?);
            let bytes = match out.format {
                Format::Csv => output::rows_csv(std::slice::from_ref(&row)),
                Format::Json => output::json_bytes(&row),
            };
            emit(&out, &bytes)
        }
        Command::Sweep {
            params,
            var,
            from,
            to,
            points,
            out,
            plot,
        } => sweep("sweep", &params, var, from, to, points, &out, plot.as_ref()),
        Command::Threshold {
            params,
            var,
            measure,
            bracket,
            out,
        } => {
            let p = params.to_si()?;
            let bracket = match bracket {
                Some((lo, hi)) => (var.to_si(lo), var.to_si(hi)),
                None => default_bracket(&p, var.variable())?,
            };
            let t = find_threshold(&p, measure.measure(), var.variable(), bracket, DEFAULT_TOL)?;
            let record = ThresholdRecord::new(measure.name(), var, &t);
            let bytes = match out.format {
                Format::Csv => output::threshold_csv(&record),
                Format::Json => output::json_bytes(&record),
            };
            emit(&out, &bytes)
        }
        Command::Figure1(a) => sweep(
            "figure1",
            &a.params,
            Quantity::Epsilon,
            a.from.unwrap_or(0.0),
            a.to.unwrap_or(0.25),
            a.points,
            &a.out,
            a.plot.as_ref(),
        ),
        Command::Figure2(a) => sweep(
            "figure2",
            &a.params,
            Quantity::Nth,
            a.from.unwrap_or(0.0),
            a.to.unwrap_or(0.05),
            a.points,
            &a.out,
            a.plot.as_ref(),
        ),
    }
}

fn fail(e: &CliError) -> ExitCode {
    let record = serde_json::to_string(&e.record()).expect("serializable");
    eprintln!("{record}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            return fail(&CliError::Usage(
                e.render().to_string().trim_end().to_string(),
            ))
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}
