use serde::{Deserialize, Serialize};

use super::{log_grid, peak_qfi, EvalSettings, Peak, PeakSearch};
use crate::error::{invalid, Result};
use crate::uncertainty::Probe;

/// Parameters of the σ_F scan; σ values are in units of ω.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaFSettings {
    /// Largest tolerated `|peak Ī(σ) - peak I(0)| / peak I(0)`.
    pub epsilon_rel: f64,
    /// Ascending σ grid.
    pub sigmas: Vec<f64>,
    /// Search for the σ = 0 peak.
    pub reference_search: PeakSearch,
    /// Half-width of the window around the σ = 0 peak searched at σ > 0.
    pub window: f64,
    pub window_points: usize,
    /// Grid stride of the first pass; the bracketing stride is then filled in.
    pub stride: usize,
}

impl Default for SigmaFSettings {
    fn default() -> Self {
        Self {
            epsilon_rel: 0.01,
            sigmas: log_grid(1e-4, 1.0, 48).expect("valid default grid"),
            reference_search: PeakSearch::default(),
            window: 0.3,
            window_points: 31,
            stride: 8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaFStatus {
    /// Interpolated between two grid points.
    Bracketed,
    /// Within tolerance on the whole grid; `sigma_f` is the last grid point.
    NeverDeparted,
    /// Outside tolerance already at the first grid point, which is returned.
    DepartedAtFirst,
}

/// Largest σ at which the peak still tracks the single-parameter peak.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaF {
    pub probe: Probe,
    pub epsilon_rel: f64,
    pub sigma_f: f64,
    pub status: SigmaFStatus,
    /// The evaluated deviations never decrease with σ.
    pub monotone: bool,
    pub reference: Peak,
    /// Evaluated `(σ, relative deviation)` pairs, ascending in σ.
    pub curve: Vec<(f64, f64)>,
}

/// Finds the first grid σ whose windowed peak deviates from the σ = 0 peak by
/// more than `epsilon_rel` and interpolates the crossing linearly in `ln σ`.
///
/// The grid is first walked with the configured stride and then densely
/// between the last two strided points; this equals a full scan when the
/// deviation grows monotonically, which `monotone` reports.
pub fn sigma_f(probe: Probe, settings: &SigmaFSettings, eval: &EvalSettings) -> Result<SigmaF> {
    let sig = &settings.sigmas;
    if !(settings.epsilon_rel > 0.0) {
        return Err(invalid(format!("epsilon_rel must be positive, got {}", settings.epsilon_rel)));
    }
    if sig.is_empty() || sig[0] <= 0.0 || sig.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("sigma grid must be positive and strictly ascending"));
    }
    if settings.stride == 0 {
        return Err(invalid("stride must be at least 1"));
    }
    let plain = EvalSettings {
        check_convergence: false,
        ..*eval
    };
    let reference = peak_qfi(probe, 0.0, &settings.reference_search, &plain)?;
    let window = PeakSearch {
        tolerance: settings.reference_search.tolerance,
        ..PeakSearch::window(reference.g_star, settings.window, settings.window_points)
    };
    let deviation = |i: usize| -> Result<f64> {
        let p = peak_qfi(probe, sig[i], &window, &plain)?;
        Ok((p.value - reference.value).abs() / reference.value)
    };

    let mut curve: Vec<(usize, f64)> = Vec::new();
    let mut departed = None;
    let mut i = 0;
    loop {
        let d = deviation(i)?;
        curve.push((i, d));
        if d > settings.epsilon_rel {
            departed = Some(i);
            break;
        }
        if i + 1 == sig.len() {
            break;
        }
        i = (i + settings.stride).min(sig.len() - 1);
    }
    if let Some(hit) = departed {
        let from = curve.len().checked_sub(2).map(|k| curve[k].0);
        if let Some(from) = from {
            let mut first = hit;
            for j in from + 1..hit {
                let d = deviation(j)?;
                curve.push((j, d));
                if d > settings.epsilon_rel {
                    first = j;
                    break;
                }
            }
            departed = Some(first);
        }
    }
    curve.sort_by_key(|&(i, _)| i);
    curve.dedup_by_key(|&mut (i, _)| i);

    let dev_at = |i: usize| curve.iter().find(|&&(j, _)| j == i).map(|&(_, d)| d);
    let (sigma_f, status) = match departed {
        None => (sig[sig.len() - 1], SigmaFStatus::NeverDeparted),
        Some(0) => (sig[0], SigmaFStatus::DepartedAtFirst),
        Some(k) => {
            let (d0, d1) = (dev_at(k - 1).expect("evaluated"), dev_at(k).expect("evaluated"));
            let t = (settings.epsilon_rel - d0) / (d1 - d0);
            let (l0, l1) = (sig[k - 1].ln(), sig[k].ln());
            ((l0 + t * (l1 - l0)).exp(), SigmaFStatus::Bracketed)
        }
    };
    let monotone = curve.windows(2).all(|w| w[1].1 >= w[0].1 - 1e-9);
    Ok(SigmaF {
        probe,
        epsilon_rel: settings.epsilon_rel,
        sigma_f,
        status,
        monotone,
        reference,
        curve: curve.into_iter().map(|(i, d)| (sig[i], d)).collect(),
    })
}
