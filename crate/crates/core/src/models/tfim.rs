//! Transverse-field Ising chain, `H = -Σ (g σx σx + ω σz)` with periodic
//! boundaries, solved block by block in momentum space.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{check_field, ParameterId};
use crate::error::{invalid, Error, Result};

/// Largest block count for which dense state vectors are built.
const MAX_DENSE_BLOCKS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TfimParams {
    pub omega: f64,
    pub g: f64,
    pub n_spins: usize,
}

impl TfimParams {
    pub fn new(omega: f64, g: f64, n_spins: usize) -> Result<Self> {
        check_field(omega, g)?;
        check_spins(n_spins)?;
        Ok(Self { omega, g, n_spins })
    }

    pub fn n_blocks(&self) -> usize {
        self.n_spins / 2
    }

    /// `∂θ_k/∂wrt` for every block, in momentum order.
    pub fn theta_grads(&self, wrt: ParameterId) -> Result<Vec<f64>> {
        tfim_momenta(self.n_spins)?
            .into_iter()
            .map(|k| tfim_theta_grad(self.omega, self.g, k, wrt))
            .collect()
    }
}

fn check_spins(n_spins: usize) -> Result<()> {
    if n_spins < 2 || n_spins % 2 != 0 {
        return Err(invalid(format!(
            "n_spins must be even and at least 2, got {n_spins}"
        )));
    }
    Ok(())
}

/// Product state over positive-momentum blocks; block `k` is
/// `cos(θ_k/2)|0⟩ + sin(θ_k/2)|1⟩`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TfimGroundState {
    pub momenta: Vec<f64>,
    pub thetas: Vec<f64>,
}

impl TfimGroundState {
    pub fn n_blocks(&self) -> usize {
        self.thetas.len()
    }

    /// `(cos θ_k/2, sin θ_k/2)` for each block.
    pub fn block_amplitudes(&self) -> Vec<[f64; 2]> {
        self.thetas
            .iter()
            .map(|t| {
                let (s, c) = (0.5 * t).sin_cos();
                [c, s]
            })
            .collect()
    }
}

/// Quasi-momenta `π(2n+1)/N`, `n = 0..N/2`, ascending.
pub fn tfim_momenta(n_spins: usize) -> Result<Vec<f64>> {
    check_spins(n_spins)?;
    let n = n_spins as f64;
    Ok((0..n_spins / 2)
        .map(|j| PI * (2 * j + 1) as f64 / n)
        .collect())
}

/// Bogoliubov angle with `tan θ_k = g sin k / (g cos k - ω)`.
///
/// The branch is `π + atan2(-g sin k, ω - g cos k)`, valued in `(0, 2π]`.
/// For `ω > 0` and `k ∈ (0, π)` it is continuous in `g` over the whole real
/// line, including `g = 0` where it equals `π`.
pub fn tfim_theta(omega: f64, g: f64, k: f64) -> Result<f64> {
    let y = g * k.sin();
    let x = g * k.cos() - omega;
    if y == 0.0 && x == 0.0 {
        return Err(Error::DegenerateAngle { omega, g, k });
    }
    Ok(PI + (-y).atan2(-x))
}

/// `∂θ_k/∂ω = g sin k / D` and `∂θ_k/∂g = -ω sin k / D`, with
/// `D = g² + ω² - 2gω cos k`.
pub fn tfim_theta_grad(omega: f64, g: f64, k: f64, wrt: ParameterId) -> Result<f64> {
    let d = g * g + omega * omega - 2.0 * g * omega * k.cos();
    if d <= 0.0 {
        return Err(Error::SingularPoint { omega, g, k });
    }
    let s = k.sin();
    Ok(match wrt {
        ParameterId::Omega => g * s / d,
        ParameterId::Coupling => -omega * s / d,
    })
}

/// Single-particle energy `ε_k = -2√(g² + ω² - 2gω cos k)`.
pub fn tfim_block_energy(omega: f64, g: f64, k: f64) -> f64 {
    let d = g * g + omega * omega - 2.0 * g * omega * k.cos();
    -2.0 * d.max(0.0).sqrt()
}

pub fn tfim_ground_state(params: &TfimParams) -> Result<TfimGroundState> {
    check_field(params.omega, params.g)?;
    let momenta = tfim_momenta(params.n_spins)?;
    let thetas = momenta
        .iter()
        .map(|&k| tfim_theta(params.omega, params.g, k))
        .collect::<Result<_>>()?;
    Ok(TfimGroundState { momenta, thetas })
}

/// `⟨a|b⟩ = Π_k cos((θ_k^a - θ_k^b)/2)`.
pub fn tfim_overlap(a: &TfimGroundState, b: &TfimGroundState) -> Result<f64> {
    if a.momenta != b.momenta || a.thetas.len() != b.thetas.len() {
        return Err(invalid("ground states live on different momentum grids"));
    }
    Ok(a.thetas
        .iter()
        .zip(&b.thetas)
        .map(|(ta, tb)| (0.5 * (ta - tb)).cos())
        .product())
}

/// The ground state as an explicit `2^(N/2)` vector; the first block is the
/// most significant tensor factor.
pub fn tfim_state_vector(params: &TfimParams) -> Result<Vec<Complex64>> {
    let state = tfim_ground_state(params)?;
    check_dense(state.n_blocks())?;
    let blocks = state.block_amplitudes();
    Ok(product_vector(&blocks, None))
}

/// `∂_wrt` of [`tfim_state_vector`]: a sum over blocks of the product state
/// with that one block replaced by its derivative.
pub fn tfim_state_grad_vector(params: &TfimParams, wrt: ParameterId) -> Result<Vec<Complex64>> {
    let state = tfim_ground_state(params)?;
    check_dense(state.n_blocks())?;
    let blocks = state.block_amplitudes();
    let grads = params.theta_grads(wrt)?;
    let mut out = vec![Complex64::new(0.0, 0.0); 1 << blocks.len()];
    for (j, dtheta) in grads.iter().enumerate() {
        let [c, s] = blocks[j];
        let dblock = [-0.5 * dtheta * s, 0.5 * dtheta * c];
        let term = product_vector(&blocks, Some((j, dblock)));
        for (o, t) in out.iter_mut().zip(term) {
            *o += t;
        }
    }
    Ok(out)
}

fn check_dense(n_blocks: usize) -> Result<()> {
    if n_blocks > MAX_DENSE_BLOCKS {
        return Err(Error::TooLarge {
            dim: 1 << n_blocks.min(63),
            cap: 1 << MAX_DENSE_BLOCKS,
        });
    }
    Ok(())
}

fn product_vector(blocks: &[[f64; 2]], replace: Option<(usize, [f64; 2])>) -> Vec<Complex64> {
    let n = blocks.len();
    (0..1usize << n)
        .map(|idx| {
            let mut amp = 1.0;
            for (j, block) in blocks.iter().enumerate() {
                let bit = (idx >> (n - 1 - j)) & 1;
                let b = match replace {
                    Some((r, ref alt)) if r == j => alt,
                    _ => block,
                };
                amp *= b[bit];
            }
            Complex64::new(amp, 0.0)
        })
        .collect()
}
