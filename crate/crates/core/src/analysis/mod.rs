//! Peak search over the coupling, σ_F detection, phase diagrams and
//! power-law fits.
//!
//! Couplings and uncertainties are passed in units of ω (`g/ω`, `σ/ω`) and
//! QFI values are returned in units of `1/ω²`, so every result is
//! dimensionless.

mod fit;
mod grid;
mod peak;
mod sigma_f;
mod sweep;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Tolerances, DEFAULT_QUADRATURE_ORDER};
use crate::error::{invalid, Result};
use crate::models::{LmgParams, LzParams, TfimParams};
use crate::qfi::{lmg_qfim_numeric, lz_qfim_closed, tfim_qfim_closed};
use crate::uncertainty::{
    averaged_qfi_report, AveragingOptions, DerivativeRoute, GaussianBelief, Probe, StatePath,
};

pub use fit::{power_law_fit, scaling_class, PowerLawFit, ScalingClass};
pub use grid::{linear_grid, log_grid};
pub use peak::{peak_qfi, peak_scaling, Peak, PeakSearch};
pub use sigma_f::{sigma_f, SigmaF, SigmaFSettings, SigmaFStatus};
pub use sweep::{phase_diagram, Axis, Cell, SweepMetadata, SweepResult};

/// How a single `Ī_ωω` value is computed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalSettings {
    /// Energy unit ω; inputs and outputs are scaled by it.
    pub omega: f64,
    /// Gauss–Hermite order M.
    pub nodes: usize,
    pub route: DerivativeRoute,
    pub path: StatePath,
    /// Compare against `2M` nodes and flag the result.
    pub check_convergence: bool,
    pub tolerances: Tolerances,
}

impl Default for EvalSettings {
    fn default() -> Self {
        Self {
            omega: 1.0,
            nodes: DEFAULT_QUADRATURE_ORDER,
            route: DerivativeRoute::Auto,
            path: StatePath::Auto,
            check_convergence: false,
            tolerances: Tolerances::default(),
        }
    }
}

/// `Ī_ωω·ω²` at one `(g/ω, σ/ω)` point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sensitivity {
    pub value: f64,
    pub relative_change: Option<f64>,
    pub converged: Option<bool>,
}

/// `Ī_ωω·ω²` of `probe` at mean coupling `g_rel·ω` and spread `sigma_rel·ω`.
///
/// A zero spread evaluates the single-parameter `I_ωω` from the model's
/// closed form (LMG: exact diagonalisation).
pub fn sensitivity(probe: Probe, g_rel: f64, sigma_rel: f64, settings: &EvalSettings) -> Result<Sensitivity> {
    probe.validate()?;
    let omega = settings.omega;
    if !(omega.is_finite() && omega > 0.0) {
        return Err(invalid(format!("omega must be finite and positive, got {omega}")));
    }
    let (g, sigma) = (g_rel * omega, sigma_rel * omega);
    let scale = omega * omega;
    if sigma_rel == 0.0 {
        let value = match probe {
            Probe::LandauZener => lz_qfim_closed(&LzParams::new(omega, g)?)?.i_oo,
            Probe::Ising { n_spins } => tfim_qfim_closed(&TfimParams::new(omega, g, n_spins)?)?.i_oo,
            Probe::Lmg { n_spins } => lmg_qfim_numeric(&LmgParams::new(omega, g, n_spins)?)?.i_oo,
        };
        let checked = settings.check_convergence;
        return Ok(Sensitivity {
            value: value * scale,
            relative_change: checked.then_some(0.0),
            converged: checked.then_some(true),
        });
    }
    let belief = GaussianBelief::new(g, sigma, settings.nodes)?;
    let options = AveragingOptions {
        route: settings.route,
        path: settings.path,
        check_convergence: settings.check_convergence,
    };
    let report = averaged_qfi_report(probe, omega, &belief, &options)?;
    let converged = report
        .relative_change
        .map(|c| c <= settings.tolerances.quadrature_rel);
    Ok(Sensitivity {
        value: report.value * scale,
        relative_change: report.relative_change,
        converged,
    })
}

/// Applies `f` to every item on `workers` threads (the ambient pool when
/// `None`) and returns the results in item order.
pub fn par_map<T, R, F>(items: &[T], workers: Option<usize>, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    let run = || items.par_iter().map(&f).collect::<Vec<R>>();
    match workers {
        None => Ok(run()),
        Some(0) => Err(invalid("worker count must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| invalid(format!("cannot start {n} workers: {e}")))
            .map(|pool| pool.install(run)),
    }
}
