//! Summarizes a run CSV: fit exponents plus inequality pass/fail counts.

use quadlab_core::numerics::fit::fit_power_law;
use quadlab_core::{CoreError, Result};
use std::path::Path;

/// What `report` found; `violations` drives the exit code.
#[derive(Debug)]
pub struct ReportSummary {
    pub violations: usize,
    pub lines: Vec<String>,
}

fn parse_cell(cell: &str, column: &str, line: u64) -> Result<f64> {
    cell.parse::<f64>().map_err(|_| {
        CoreError::Config(format!(
            "line {line}: column {column} holds {cell:?}, expected a number"
        ))
    })
}

/// Reads a CSV produced by `run` and assembles the human-readable summary.
pub fn summarize(path: &Path) -> Result<ReportSummary> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(false)
        .from_path(path)
        .map_err(|e| CoreError::Config(format!("cannot open {}: {e}", path.display())))?;
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| CoreError::Config(format!("malformed header: {e}")))?
        .iter()
        .map(str::to_string)
        .collect();
    let column = |name: &str| header.iter().position(|h| h == name);

    let holds_col = column("holds").or_else(|| column("triangle_holds"));
    let mut records = Vec::new();
    for result in reader.records() {
        let record = result.map_err(|e| {
            let line = e
                .position()
                .map_or_else(|| "?".to_string(), |p| p.line().to_string());
            CoreError::Config(format!("malformed CSV at line {line}: {e}"))
        })?;
        records.push(record);
    }

    let mut lines = vec![format!("{} rows", records.len())];
    let mut violations = 0;
    if let Some(col) = holds_col {
        for record in &records {
            let line = record.position().map_or(0, |p| p.line());
            if record.get(col) == Some("false") {
                violations += 1;
                let key = record.get(0).unwrap_or("?");
                lines.push(format!(
                    "violation at line {line}: row {key} has {} = false",
                    header[col]
                ));
            }
        }
    }

    // power-law fits for the sweep-shaped tables
    let fit_lines = |x_name: &str, y_name: &str, label: &str| -> Result<Option<String>> {
        let (Some(xc), Some(yc)) = (column(x_name), column(y_name)) else {
            return Ok(None);
        };
        let mut pairs = Vec::new();
        for record in &records {
            let line = record.position().map_or(0, |p| p.line());
            let x = parse_cell(record.get(xc).unwrap_or(""), x_name, line)?;
            let y = parse_cell(record.get(yc).unwrap_or(""), y_name, line)?;
            pairs.push((x, y));
        }
        pairs.dedup_by(|a, b| a.0 == b.0);
        match fit_power_law(&pairs) {
            Ok(fit) => Ok(Some(format!(
                "{label}: exponent {} (r^2 = {}, {} points)",
                fit.exponent, fit.r_squared, fit.points_used
            ))),
            Err(_) => Ok(Some(format!("{label}: fit unavailable"))),
        }
    };
    for (x_name, y_name, label) in [
        ("delta", "norm_total", "delta-decay total"),
        ("delta", "norm_low", "delta-decay low band"),
        ("n", "abs", "average magnitude vs N"),
        ("scale", "abs", "trajectory magnitude vs scale"),
        ("lambda", "value", "probe output vs lambda"),
    ] {
        if let Some(line) = fit_lines(x_name, y_name, label)? {
            lines.push(line);
        }
    }

    lines.push(format!("{violations} violations"));
    Ok(ReportSummary { violations, lines })
}
