use faer::Mat;
use num_complex::Complex64;

use super::samples::sample;
use super::{check_omega, weight_scores, AveragedState, DerivativeRoute, GaussianBelief, Probe};
use crate::config::Tolerances;
use crate::error::Result;
use crate::numerics::{symmetric_eig, ComplexMatrix};

/// `ϱ̄` and `∂_ω ϱ̄` in an orthonormal basis of the sampled subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct LowRankState {
    /// `r×r` representation of `ϱ̄`.
    pub rho: ComplexMatrix,
    /// `r×r` representation of `∂_ω ϱ̄`.
    pub d_omega: ComplexMatrix,
    /// Number of sampled vectors `L` (states, then derivatives if used).
    pub sampled: usize,
    /// `L×r`, row-major: basis vector `k` is `Σ_i coefficients[i][k] x_i`.
    pub coefficients: Vec<f64>,
    /// Gram eigen-directions dropped below the singular-value threshold.
    pub discarded: usize,
    /// `max|CᵀC - G| / max|G|` for the sample coordinates `C`; zero when the
    /// basis reproduces every pairwise overlap exactly.
    pub gram_residual: f64,
}

impl LowRankState {
    pub fn rank(&self) -> usize {
        self.rho.rows()
    }
}

/// Low-rank representation with the automatic route.
pub fn averaged_state_lowrank(probe: Probe, omega: f64, belief: &GaussianBelief) -> Result<AveragedState> {
    averaged_state_lowrank_with(probe, omega, belief, DerivativeRoute::Auto)
}

/// Builds the Gram matrix `G` of the sampled vectors (pairwise overlaps,
/// blockwise for Ising product states), diagonalises it as `G = U Λ Uᵀ` and
/// takes the basis `Q = X U Λ^{-1/2}`, in which sample `i` has coordinates
/// `C_i = Λ^{1/2} Uᵀ e_i`.
pub fn averaged_state_lowrank_with(
    probe: Probe,
    omega: f64,
    belief: &GaussianBelief,
    route: DerivativeRoute,
) -> Result<AveragedState> {
    probe.validate()?;
    check_omega(omega)?;
    let rule = belief.rule()?;
    let route = route.resolve(omega, belief);
    let projector = route == DerivativeRoute::SampledProjector;
    let samples = sample(probe, omega, &rule.nodes, projector)?;
    let m = samples.len();
    let gram = samples.gram();
    let l = if projector { 2 * m } else { m };
    let g = Mat::from_fn(l, l, |i, j| gram[i * l + j]);

    let eig = symmetric_eig(&g)?;
    let top = eig.values.last().copied().unwrap_or(0.0).max(0.0);
    let thr = Tolerances::default().gram_singular_rel;
    let keep: Vec<usize> = (0..l)
        .filter(|&k| eig.values[k] > 0.0 && eig.values[k] > thr * thr * top)
        .collect();
    let r = keep.len();
    let c = Mat::from_fn(r, l, |a, i| eig.values[keep[a]].sqrt() * eig.vectors[(i, keep[a])]);

    let mut residual: f64 = 0.0;
    let recon = c.transpose() * &c;
    let gmax = gram.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    for i in 0..l {
        for j in 0..l {
            residual = residual.max((recon[(i, j)] - g[(i, j)]).abs());
        }
    }

    let w = &rule.weights;
    let psi = c.subcols(0, m);
    let weighted = |f: &dyn Fn(usize) -> f64| Mat::from_fn(r, m, |a, i| c[(a, i)] * f(i));
    let rho = &weighted(&|i| w[i]) * psi.transpose();
    let drho = if projector {
        let half = &weighted(&|i| w[i]) * c.subcols(m, m).transpose();
        Mat::from_fn(r, r, |a, b| half[(a, b)] + half[(b, a)])
    } else {
        let s = weight_scores(omega, belief, &rule.nodes);
        &weighted(&|i| w[i] * s[i]) * psi.transpose()
    };

    let to_complex = |a: &Mat<f64>| {
        ComplexMatrix::from_fn(r, r, |i, j| Complex64::new(0.5 * (a[(i, j)] + a[(j, i)]), 0.0))
    };
    let coefficients = (0..l)
        .flat_map(|i| {
            let eig = &eig;
            let keep = &keep;
            (0..r).map(move |a| eig.vectors[(i, keep[a])] / eig.values[keep[a]].sqrt())
        })
        .collect();
    Ok(AveragedState::LowRank(LowRankState {
        rho: to_complex(&rho),
        d_omega: to_complex(&drho),
        sampled: l,
        coefficients,
        discarded: l - r,
        gram_residual: if gmax > 0.0 { residual / gmax } else { 0.0 },
    }))
}
