//! CSV and JSON renderings of grids, reports and event dumps.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::{json, Value};

use crate::events::{format_signature, symmetry_signature, EvenEvent};
use crate::optics::{AmplitudeGrid, RegimeReport};

/// Twelve significant digits in scientific notation.
pub fn format_number(v: f64) -> String {
    format!("{v:.11e}")
}

/// `y,z,psi` with one row per sample, y-major.
pub fn write_grid_csv<W: Write>(grid: &AmplitudeGrid, mut out: W) -> io::Result<()> {
    writeln!(out, "y,z,psi")?;
    for (i, y) in grid.y_samples.iter().enumerate() {
        for (j, z) in grid.z_samples.iter().enumerate() {
            writeln!(
                out,
                "{},{},{}",
                format_number(*y),
                format_number(*z),
                format_number(grid.values[[i, j]])
            )?;
        }
    }
    Ok(())
}

/// Same samples as the CSV, plus the method tag and regime report. Sample
/// values are decimal strings so they match the CSV digit for digit.
pub fn grid_json(grid: &AmplitudeGrid, report: &RegimeReport) -> Value {
    let samples: Vec<Value> = grid
        .y_samples
        .iter()
        .enumerate()
        .flat_map(|(i, y)| {
            grid.z_samples.iter().enumerate().map(move |(j, z)| {
                json!({
                    "y": format_number(*y),
                    "z": format_number(*z),
                    "psi": format_number(grid.values[[i, j]]),
                })
            })
        })
        .collect();
    json!({
        "method_tag": grid.method.tag(),
        "regime": report,
        "samples": samples,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EventDump {
    pub short: String,
    pub expanded: String,
    pub attribute_count: usize,
    pub symmetries: String,
}

impl EventDump {
    pub fn of(e: &EvenEvent) -> Self {
        EventDump {
            short: e.short(),
            expanded: e.expanded(),
            attribute_count: e.attribute_count(),
            symmetries: format_signature(&symmetry_signature(e)),
        }
    }
}
