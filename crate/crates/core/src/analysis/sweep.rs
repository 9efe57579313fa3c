use serde::{Deserialize, Serialize};

use super::{par_map, sensitivity, EvalSettings};
use crate::error::{invalid, Result};
use crate::uncertainty::Probe;

/// A named grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
}

/// One evaluated grid point; `value` is absent when `error` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub value: Option<f64>,
    pub relative_change: Option<f64>,
    pub converged: Option<bool>,
    pub error: Option<String>,
}

/// Everything needed to recompute any cell in isolation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMetadata {
    pub probe: Probe,
    pub settings: EvalSettings,
}

/// `Ī_ωω·ω²` on the product of the axes, row-major with the first axis
/// outermost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub axes: Vec<Axis>,
    pub cells: Vec<Cell>,
    pub metadata: SweepMetadata,
}

impl SweepResult {
    pub fn failed_cells(&self) -> usize {
        self.cells.iter().filter(|c| c.error.is_some()).count()
    }

    /// Largest valid value in each row of a two-axis sweep.
    pub fn row_maxima(&self) -> Vec<Option<f64>> {
        let width = self.axes.last().map_or(0, |a| a.values.len()).max(1);
        self.cells
            .chunks(width)
            .map(|row| row.iter().filter_map(|c| c.value).reduce(f64::max))
            .collect()
    }
}

/// `Ī_ωω·ω²` over σ (outer axis) and mean coupling (inner axis), both in
/// units of ω. Failing cells are recorded and the sweep continues.
pub fn phase_diagram(
    probe: Probe,
    g_grid: &[f64],
    sigma_grid: &[f64],
    settings: &EvalSettings,
    workers: Option<usize>,
) -> Result<SweepResult> {
    probe.validate()?;
    if g_grid.is_empty() || sigma_grid.is_empty() {
        return Err(invalid("phase diagram grids must be non-empty"));
    }
    if sigma_grid.iter().any(|s| !(s.is_finite() && *s >= 0.0)) {
        return Err(invalid("sigma grid must be finite and non-negative"));
    }
    let points: Vec<(f64, f64)> = sigma_grid
        .iter()
        .flat_map(|&s| g_grid.iter().map(move |&g| (s, g)))
        .collect();
    let cells = par_map(&points, workers, |&(s, g)| match sensitivity(probe, g, s, settings) {
        Ok(v) => Cell {
            value: Some(v.value),
            relative_change: v.relative_change,
            converged: v.converged,
            error: None,
        },
        Err(e) => Cell {
            value: None,
            relative_change: None,
            converged: None,
            error: Some(e.to_string()),
        },
    })?;
    Ok(SweepResult {
        axes: vec![
            Axis {
                name: "sigma_over_omega".into(),
                values: sigma_grid.to_vec(),
            },
            Axis {
                name: "g_over_omega".into(),
                values: g_grid.to_vec(),
            },
        ],
        cells,
        metadata: SweepMetadata {
            probe,
            settings: *settings,
        },
    })
}
