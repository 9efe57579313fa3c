use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{linear_grid, par_map, sensitivity, EvalSettings};
use crate::error::{invalid, Result};
use crate::uncertainty::Probe;

/// Coarse-grid plus golden-section search over the mean coupling, in units of ω.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeakSearch {
    pub lower: f64,
    pub upper: f64,
    pub coarse_points: usize,
    /// Final bracket width.
    pub tolerance: f64,
}

impl Default for PeakSearch {
    fn default() -> Self {
        Self {
            lower: 0.01,
            upper: 2.0,
            coarse_points: 201,
            tolerance: 1e-6,
        }
    }
}

impl PeakSearch {
    /// `center ± half_width` with `points` coarse samples.
    pub fn window(center: f64, half_width: f64, points: usize) -> Self {
        Self {
            lower: center - half_width,
            upper: center + half_width,
            coarse_points: points,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.lower.is_finite() && self.upper.is_finite() && self.lower < self.upper) {
            return Err(invalid(format!(
                "peak search needs lower < upper, got {}:{}",
                self.lower, self.upper
            )));
        }
        if self.coarse_points < 3 {
            return Err(invalid("peak search needs at least 3 coarse points"));
        }
        if !(self.tolerance > 0.0) {
            return Err(invalid("peak search tolerance must be positive"));
        }
        Ok(())
    }
}

/// Maximum of `Ī_ωω·ω²` over the mean coupling at fixed spread.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    pub probe: Probe,
    pub sigma: f64,
    pub g_star: f64,
    pub value: f64,
    /// The coarse profile has more than one local maximum.
    pub multi_peak: bool,
    pub relative_change: Option<f64>,
    pub converged: Option<bool>,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Scans the coarse grid, refines around its first maximum by golden
/// section, and keeps whichever of the two is larger.
pub fn peak_qfi(probe: Probe, sigma: f64, search: &PeakSearch, settings: &EvalSettings) -> Result<Peak> {
    search.validate()?;
    let plain = EvalSettings {
        check_convergence: false,
        ..*settings
    };
    let eval = |g: f64| sensitivity(probe, g, sigma, &plain).map(|s| s.value);
    let grid = linear_grid(search.lower, search.upper, search.coarse_points)?;
    let profile = grid.par_iter().map(|&g| eval(g)).collect::<Result<Vec<f64>>>()?;

    let best = profile
        .iter()
        .enumerate()
        .fold(0, |b, (i, &v)| if v > profile[b] { i } else { b });
    let (mut a, mut b) = (grid[best.saturating_sub(1)], grid[(best + 1).min(grid.len() - 1)]);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let (mut f1, mut f2) = (eval(x1)?, eval(x2)?);
    while b - a > search.tolerance {
        if f1 >= f2 {
            b = x2;
            (x2, f2) = (x1, f1);
            x1 = b - INV_PHI * (b - a);
            f1 = eval(x1)?;
        } else {
            a = x1;
            (x1, f1) = (x2, f2);
            x2 = a + INV_PHI * (b - a);
            f2 = eval(x2)?;
        }
    }
    let (mut g_star, mut value) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    if profile[best] >= value {
        (g_star, value) = (grid[best], profile[best]);
    }

    let (relative_change, converged) = if settings.check_convergence {
        let s = sensitivity(probe, g_star, sigma, settings)?;
        (s.relative_change, s.converged)
    } else {
        (None, None)
    };
    Ok(Peak {
        probe,
        sigma,
        g_star,
        value,
        multi_peak: count_maxima(&profile) > 1,
        relative_change,
        converged,
    })
}

/// Local maxima of a sampled profile, treating plateaus as one point and
/// ignoring bumps below `1e-9` of the largest value.
fn count_maxima(profile: &[f64]) -> usize {
    let top = profile.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = 1e-9 * top;
    let mut steps = Vec::with_capacity(profile.len());
    let mut last = profile[0];
    for &v in &profile[1..] {
        if (v - last).abs() > floor {
            steps.push(v > last);
            last = v;
        }
    }
    let interior = steps.windows(2).filter(|w| w[0] && !w[1]).count();
    let left = usize::from(steps.first() == Some(&false));
    let right = usize::from(steps.last() == Some(&true));
    interior + left + right
}

/// [`peak_qfi`] for every `(probe, σ)` pair, probe-major, each with its own
/// outcome.
pub fn peak_scaling(
    probes: &[Probe],
    sigmas: &[f64],
    search: &PeakSearch,
    settings: &EvalSettings,
    workers: Option<usize>,
) -> Result<Vec<Result<Peak>>> {
    let cells: Vec<(Probe, f64)> = probes
        .iter()
        .flat_map(|&p| sigmas.iter().map(move |&s| (p, s)))
        .collect();
    par_map(&cells, workers, |&(p, s)| peak_qfi(p, s, search, settings))
}
