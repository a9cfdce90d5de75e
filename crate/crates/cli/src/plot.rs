use std::path::Path;

use plotters::prelude::*;

use crate::error::CliError;
use crate::output::Row;

/// Line chart of √C (exact and closed form) and E_N against the sweep variable.
pub fn render(path: &Path, x_label: &str, rows: &[Row]) -> Result<(), CliError> {
    let io_err = |e: &dyn std::fmt::Display| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    let xs: Vec<f64> = rows
        .iter()
        .map(|r| r.variable_value.unwrap_or(r.epsilon))
        .collect();
    let series: [(&str, Vec<f64>, RGBColor); 3] = [
        (
            "sqrt C (exact)",
            rows.iter().map(|r| r.sqrt_discord).collect(),
            BLUE,
        ),
        (
            "sqrt C (closed form)",
            rows.iter().map(|r| r.discord_perturbative.sqrt()).collect(),
            GREEN,
        ),
        ("E_N", rows.iter().map(|r| r.log_negativity).collect(), RED),
    ];
    let (x0, x1) = (
        xs.first().copied().unwrap_or(0.0),
        xs.last().copied().unwrap_or(1.0),
    );
    let y1 = series
        .iter()
        .flat_map(|s| s.1.iter().copied())
        .fold(0.0_f64, f64::max)
        .max(1e-6)
        * 1.05;

    let root = SVGBackend::new(path, (800, 500)).into_drawing_area();
    root.fill(&WHITE).map_err(|e| io_err(&e))?;
    let mut chart = ChartBuilder::on(&root)
        .margin(20)
        .x_label_area_size(40)
        .y_label_area_size(60)
        .build_cartesian_2d(x0..x1, 0.0..y1)
        .map_err(|e| io_err(&e))?;
    chart
        .configure_mesh()
        .x_desc(x_label)
        .y_desc("bits")
        .draw()
        .map_err(|e| io_err(&e))?;
    for (name, ys, color) in series {
        chart
            .draw_series(LineSeries::new(
                xs.iter().copied().zip(ys),
                color.stroke_width(2),
            ))
            .map_err(|e| io_err(&e))?
            .label(name)
            .legend(move |(x, y)| PathElement::new(vec![(x, y), (x + 20, y)], color));
    }
    chart
        .configure_series_labels()
        .background_style(WHITE.mix(0.8))
        .border_style(BLACK)
        .draw()
        .map_err(|e| io_err(&e))?;
    root.present().map_err(|e| io_err(&e))?;
    Ok(())
}
