//! The Gaussian-averaged ground state
//! `ϱ̄ = ∫ dg p(g) |ψ(ω, g)⟩⟨ψ(ω, g)|`, discretised with a Gauss–Hermite
//! rule, and its QFI `Ī_ωω` with respect to the target field ω.
//!
//! Two discretisations of `∂_ω ϱ̄` are offered. [`DerivativeRoute::SampledProjector`]
//! differentiates every sampled projector at fixed nodes.
//! [`DerivativeRoute::WeightScore`] uses that every probe depends on
//! `(ω, g)` only through `g/ω`: substituting `g = ωu` moves the ω-dependence
//! into the density, giving `∂_ω ϱ̄ = Σ_m w_m s_m P_m` with
//! `s_m = (1 - g_m (g_m - ḡ)/σ²)/ω`.

mod dense;
mod lowrank;
mod samples;

use serde::{Deserialize, Serialize};

use crate::config::{Tolerances, DEFAULT_QUADRATURE_ORDER};
use crate::error::{invalid, Error, Result};
use crate::numerics::{gauss_hermite, ComplexMatrix, QuadratureRule, MAX_GAUSS_HERMITE_ORDER};
use crate::qfi::{qfim_mixed, SpectralState};

pub use dense::{averaged_state_dense, averaged_state_dense_with};
pub use lowrank::{averaged_state_lowrank, averaged_state_lowrank_with, LowRankState};

/// Largest Ising chain handled by the dense path (`d = 2^(N/2)`).
pub const MAX_DENSE_TFIM_SPINS: usize = 22;
/// Largest LMG chain handled by the dense path (`d = N + 1`).
pub const MAX_DENSE_LMG_SPINS: usize = 4000;
/// Below `σ/ω` of this size the automatic route differentiates projectors.
pub const PROJECTOR_SIGMA_REL: f64 = 1e-3;

/// Probe model whose ground state is averaged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum Probe {
    LandauZener,
    Ising { n_spins: usize },
    Lmg { n_spins: usize },
}

impl Probe {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Probe::LandauZener => Ok(()),
            Probe::Ising { n_spins } if n_spins >= 2 && n_spins % 2 == 0 => Ok(()),
            Probe::Ising { n_spins } => Err(invalid(format!(
                "Ising chain needs an even n_spins >= 2, got {n_spins}"
            ))),
            Probe::Lmg { n_spins } if n_spins >= 2 => Ok(()),
            Probe::Lmg { n_spins } => Err(invalid(format!("LMG needs n_spins >= 2, got {n_spins}"))),
        }
    }

    /// Hilbert-space dimension of the explicit state vector.
    pub fn dim(&self) -> Option<usize> {
        match *self {
            Probe::LandauZener => Some(2),
            Probe::Ising { n_spins } => 1usize.checked_shl((n_spins / 2) as u32),
            Probe::Lmg { n_spins } => Some(n_spins + 1),
        }
    }

    pub(crate) fn dense_feasible(&self) -> Result<usize> {
        let cap = match *self {
            Probe::LandauZener => return Ok(2),
            Probe::Ising { n_spins } => (n_spins <= MAX_DENSE_TFIM_SPINS, 1 << (MAX_DENSE_TFIM_SPINS / 2)),
            Probe::Lmg { n_spins } => (n_spins <= MAX_DENSE_LMG_SPINS, MAX_DENSE_LMG_SPINS + 1),
        };
        let dim = self.dim().unwrap_or(usize::MAX);
        match cap {
            (true, _) => Ok(dim),
            (false, cap) => Err(Error::TooLarge { dim, cap }),
        }
    }
}

/// Gaussian distribution of the coupling: mean `ḡ`, standard deviation σ,
/// discretised with `nodes` Gauss–Hermite points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianBelief {
    pub mean: f64,
    pub sigma: f64,
    pub nodes: usize,
}

impl GaussianBelief {
    pub fn new(mean: f64, sigma: f64, nodes: usize) -> Result<Self> {
        if !mean.is_finite() {
            return Err(invalid(format!("mean must be finite, got {mean}")));
        }
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(invalid(format!("sigma must be finite and >= 0, got {sigma}")));
        }
        if nodes == 0 || nodes > MAX_GAUSS_HERMITE_ORDER {
            return Err(invalid(format!(
                "nodes must lie in 1..={MAX_GAUSS_HERMITE_ORDER}, got {nodes}"
            )));
        }
        Ok(Self { mean, sigma, nodes })
    }

    /// Default node count.
    pub fn with_default_nodes(mean: f64, sigma: f64) -> Result<Self> {
        Self::new(mean, sigma, DEFAULT_QUADRATURE_ORDER)
    }

    pub fn point(mean: f64) -> Result<Self> {
        Self::new(mean, 0.0, 1)
    }

    pub fn is_point_mass(&self) -> bool {
        self.sigma == 0.0
    }

    pub fn rule(&self) -> Result<QuadratureRule> {
        gauss_hermite(self.nodes, self.mean, self.sigma)
    }
}

/// How `∂_ω ϱ̄` is discretised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivativeRoute {
    /// [`Self::SampledProjector`] for `σ <= PROJECTOR_SIGMA_REL·ω`, otherwise
    /// [`Self::WeightScore`].
    #[default]
    Auto,
    WeightScore,
    SampledProjector,
}

impl DerivativeRoute {
    pub fn resolve(self, omega: f64, belief: &GaussianBelief) -> DerivativeRoute {
        match self {
            DerivativeRoute::Auto if belief.sigma <= PROJECTOR_SIGMA_REL * omega.abs() => {
                DerivativeRoute::SampledProjector
            }
            DerivativeRoute::Auto => DerivativeRoute::WeightScore,
            DerivativeRoute::WeightScore if belief.is_point_mass() => {
                DerivativeRoute::SampledProjector
            }
            other => other,
        }
    }
}

/// Which representation of `ϱ̄` is diagonalised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatePath {
    /// Low-rank whenever the sampled subspace is smaller than the Hilbert space.
    #[default]
    Auto,
    Dense,
    LowRank,
}

/// The averaged state and its ω-derivative.
#[derive(Debug, Clone, PartialEq)]
pub enum AveragedState {
    Dense {
        state: SpectralState,
        d_omega: ComplexMatrix,
    },
    LowRank(LowRankState),
}

impl AveragedState {
    /// `Ī_ωω` from the mixed-state QFI of the stored representation.
    pub fn qfi(&self) -> Result<f64> {
        match self {
            AveragedState::Dense { state, d_omega } => qfim_mixed(state, d_omega, d_omega),
            AveragedState::LowRank(lr) => {
                let state = SpectralState::from_density(&lr.rho)?;
                qfim_mixed(&state, &lr.d_omega, &lr.d_omega)
            }
        }
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(match self {
            AveragedState::Dense { state, .. } => state.eigen.values.clone(),
            AveragedState::LowRank(lr) => SpectralState::from_density(&lr.rho)?.eigen.values,
        })
    }
}

/// Options for [`averaged_qfi_report`].
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AveragingOptions {
    pub route: DerivativeRoute,
    pub path: StatePath,
    /// Also evaluate with twice the nodes and compare.
    pub check_convergence: bool,
}

/// `Ī_ωω` with the choices that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AveragedQfi {
    pub value: f64,
    pub route: DerivativeRoute,
    pub path: StatePath,
    /// `|Ī(M) - Ī(2M)| / Ī(2M)`, when checked.
    pub relative_change: Option<f64>,
    /// `relative_change <= quadrature_rel`, when checked.
    pub converged: Option<bool>,
}

/// Dense-path `Ī_ωω` with the automatic derivative route.
pub fn averaged_qfi(probe: Probe, omega: f64, belief: &GaussianBelief) -> Result<f64> {
    averaged_state_dense(probe, omega, belief)?.qfi()
}

/// Low-rank-path `Ī_ωω` with the automatic derivative route.
pub fn averaged_qfi_lowrank(probe: Probe, omega: f64, belief: &GaussianBelief) -> Result<f64> {
    averaged_state_lowrank(probe, omega, belief)?.qfi()
}

fn resolve_path(probe: Probe, belief: &GaussianBelief, route: DerivativeRoute, path: StatePath) -> StatePath {
    match path {
        StatePath::Auto => {
            let sampled = match route {
                DerivativeRoute::SampledProjector => 2 * belief.nodes,
                _ => belief.nodes,
            };
            match probe.dim() {
                Some(d) if d <= sampled => StatePath::Dense,
                _ => StatePath::LowRank,
            }
        }
        p => p,
    }
}

fn evaluate(
    probe: Probe,
    omega: f64,
    belief: &GaussianBelief,
    route: DerivativeRoute,
    path: StatePath,
) -> Result<f64> {
    match path {
        StatePath::Dense => averaged_state_dense_with(probe, omega, belief, route)?.qfi(),
        _ => averaged_state_lowrank_with(probe, omega, belief, route)?.qfi(),
    }
}

/// `Ī_ωω` with explicit route and path, optionally checking quadrature
/// convergence against a rule with twice the nodes (capped at the largest
/// supported order).
pub fn averaged_qfi_report(
    probe: Probe,
    omega: f64,
    belief: &GaussianBelief,
    options: &AveragingOptions,
) -> Result<AveragedQfi> {
    probe.validate()?;
    let route = options.route.resolve(omega, belief);
    let path = resolve_path(probe, belief, route, options.path);
    let value = evaluate(probe, omega, belief, route, path)?;
    let (relative_change, converged) = if !options.check_convergence {
        (None, None)
    } else if belief.is_point_mass() {
        (Some(0.0), Some(true))
    } else {
        let doubled = GaussianBelief {
            nodes: (2 * belief.nodes).min(MAX_GAUSS_HERMITE_ORDER),
            ..*belief
        };
        if doubled.nodes == belief.nodes {
            (None, None)
        } else {
            let fine = evaluate(probe, omega, &doubled, route, resolve_path(probe, &doubled, route, options.path))?;
            let change = (value - fine).abs() / fine.abs().max(f64::MIN_POSITIVE);
            (
                Some(change),
                Some(change <= Tolerances::default().quadrature_rel),
            )
        }
    };
    Ok(AveragedQfi {
        value,
        route,
        path,
        relative_change,
        converged,
    })
}

/// `s_m = (1 - g_m (g_m - ḡ)/σ²)/ω` for every node.
pub(crate) fn weight_scores(omega: f64, belief: &GaussianBelief, nodes: &[f64]) -> Vec<f64> {
    let var = belief.sigma * belief.sigma;
    nodes
        .iter()
        .map(|g| (1.0 - g * (g - belief.mean) / var) / omega)
        .collect()
}

pub(crate) fn check_omega(omega: f64) -> Result<()> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(invalid(format!("omega must be finite and positive, got {omega}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests;
