//! Ground states (and optionally their ω-derivatives) at the quadrature
//! nodes, with the Gram matrix of the sampled vectors.

use rayon::prelude::*;

use super::Probe;
use crate::error::{Error, Result};
use crate::models::{
    lmg_ground_state, lmg_sector_gradients, lz_ground_state, lz_ground_state_grad,
    tfim_ground_state, LmgParams, LzParams, ParameterId, TfimParams,
};

/// Real sampled states. Derivatives are present only when requested.
pub(crate) enum Samples {
    /// Explicit vectors (Landau–Zener, LMG).
    Vectors {
        states: Vec<Vec<f64>>,
        derivs: Option<Vec<Vec<f64>>>,
    },
    /// Ising product states, one angle per momentum block.
    Blocks {
        thetas: Vec<Vec<f64>>,
        taus: Option<Vec<Vec<f64>>>,
    },
}

struct Node {
    state: Vec<f64>,
    deriv: Option<Vec<f64>>,
}

fn node(probe: Probe, omega: f64, g: f64, with_deriv: bool) -> Result<Node> {
    match probe {
        Probe::LandauZener => {
            let p = LzParams { omega, g };
            Ok(Node {
                state: lz_ground_state(&p)?.to_vec(),
                deriv: match with_deriv {
                    true => Some(lz_ground_state_grad(&p, ParameterId::Omega)?.to_vec()),
                    false => None,
                },
            })
        }
        Probe::Ising { n_spins } => {
            let p = TfimParams { omega, g, n_spins };
            Ok(Node {
                state: tfim_ground_state(&p)?.thetas,
                deriv: match with_deriv {
                    true => Some(p.theta_grads(ParameterId::Omega)?),
                    false => None,
                },
            })
        }
        Probe::Lmg { n_spins } => {
            let p = LmgParams { omega, g, n_spins };
            if with_deriv {
                let (psi, [dw, _]) = lmg_sector_gradients(&p)?;
                Ok(Node {
                    state: psi,
                    deriv: Some(dw),
                })
            } else {
                Ok(Node {
                    state: lmg_ground_state(&p)?.amplitudes,
                    deriv: None,
                })
            }
        }
    }
}

pub(crate) fn sample(probe: Probe, omega: f64, nodes: &[f64], with_derivs: bool) -> Result<Samples> {
    let built: Vec<Node> = nodes
        .par_iter()
        .enumerate()
        .map(|(index, &g)| {
            node(probe, omega, g, with_derivs).map_err(|e| Error::Node {
                index,
                g,
                source: Box::new(e),
            })
        })
        .collect::<Result<_>>()?;
    let (states, derivs): (Vec<_>, Vec<_>) = built.into_iter().map(|n| (n.state, n.deriv)).unzip();
    let derivs = with_derivs.then(|| derivs.into_iter().map(Option::unwrap).collect());
    Ok(match probe {
        Probe::Ising { .. } => Samples::Blocks {
            thetas: states,
            taus: derivs,
        },
        _ => Samples::Vectors { states, derivs },
    })
}

impl Samples {
    pub(crate) fn len(&self) -> usize {
        match self {
            Samples::Vectors { states, .. } => states.len(),
            Samples::Blocks { thetas, .. } => thetas.len(),
        }
    }

    pub(crate) fn has_derivs(&self) -> bool {
        match self {
            Samples::Vectors { derivs, .. } => derivs.is_some(),
            Samples::Blocks { taus, .. } => taus.is_some(),
        }
    }

    /// Gram matrix of `[ψ_1..ψ_M]`, or of `[ψ_1..ψ_M, ∂ψ_1..∂ψ_M]` when
    /// derivatives are present; row-major, side `M` or `2M`.
    pub(crate) fn gram(&self) -> Vec<f64> {
        let m = self.len();
        let l = if self.has_derivs() { 2 * m } else { m };
        let mut g = vec![0.0; l * l];
        match self {
            Samples::Vectors { states, derivs } => {
                let cols: Vec<&Vec<f64>> = states.iter().chain(derivs.iter().flatten()).collect();
                for i in 0..l {
                    for j in i..l {
                        let v = dot(cols[i], cols[j]);
                        g[i * l + j] = v;
                        g[j * l + i] = v;
                    }
                }
            }
            Samples::Blocks { thetas, taus } => {
                for a in 0..m {
                    for b in a..m {
                        let o = block_overlaps(
                            &thetas[a],
                            &thetas[b],
                            taus.as_ref().map(|t| (&t[a][..], &t[b][..])),
                        );
                        let mut put = |i: usize, j: usize, v: f64| {
                            g[i * l + j] = v;
                            g[j * l + i] = v;
                        };
                        put(a, b, o.plain);
                        if taus.is_some() {
                            put(m + a, b, o.deriv_left);
                            put(a, m + b, o.deriv_right);
                            put(m + a, m + b, o.deriv_both);
                        }
                    }
                }
            }
        }
        g
    }

    /// Explicit sampled vectors and derivatives, expanding Ising product
    /// states to `2^(N/2)` amplitudes.
    pub(crate) fn explicit(&self) -> (Vec<Vec<f64>>, Option<Vec<Vec<f64>>>) {
        match self {
            Samples::Vectors { states, derivs } => (states.clone(), derivs.clone()),
            Samples::Blocks { thetas, taus } => {
                let states = thetas.iter().map(|t| product_state(t)).collect();
                let derivs = taus.as_ref().map(|taus| {
                    thetas
                        .iter()
                        .zip(taus)
                        .map(|(t, tau)| product_state_deriv(t, tau))
                        .collect()
                });
                (states, derivs)
            }
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Overlaps between two product states and their ω-derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct BlockOverlaps {
    /// `⟨ψ_a|ψ_b⟩`
    pub plain: f64,
    /// `⟨∂ψ_a|ψ_b⟩`
    pub deriv_left: f64,
    /// `⟨ψ_a|∂ψ_b⟩`
    pub deriv_right: f64,
    /// `⟨∂ψ_a|∂ψ_b⟩`
    pub deriv_both: f64,
}

/// One pass over the blocks. Each derivative of a product is a sum of
/// products with one block differentiated; the running sums `left`,
/// `right` and `both` track how many derivative factors have been placed.
pub(crate) fn block_overlaps(ta: &[f64], tb: &[f64], taus: Option<(&[f64], &[f64])>) -> BlockOverlaps {
    let (mut plain, mut left, mut right, mut both) = (1.0, 0.0, 0.0, 0.0);
    for k in 0..ta.len() {
        let (sa, ca) = (0.5 * ta[k]).sin_cos();
        let (sb, cb) = (0.5 * tb[k]).sin_cos();
        let c = ca * cb + sa * sb;
        let Some((ua, ub)) = taus else {
            plain *= c;
            continue;
        };
        let (xa, xb) = (0.5 * ua[k], 0.5 * ub[k]);
        let u = xa * (ca * sb - sa * cb);
        let v = xb * (sa * cb - ca * sb);
        let e = xa * xb * c;
        both = both * c + left * v + right * u + plain * e;
        left = left * c + plain * u;
        right = right * c + plain * v;
        plain *= c;
    }
    BlockOverlaps {
        plain,
        deriv_left: left,
        deriv_right: right,
        deriv_both: both,
    }
}

fn product_state(thetas: &[f64]) -> Vec<f64> {
    let blocks: Vec<[f64; 2]> = thetas
        .iter()
        .map(|t| {
            let (s, c) = (0.5 * t).sin_cos();
            [c, s]
        })
        .collect();
    expand(&blocks, None)
}

fn product_state_deriv(thetas: &[f64], taus: &[f64]) -> Vec<f64> {
    let blocks: Vec<[f64; 2]> = thetas
        .iter()
        .map(|t| {
            let (s, c) = (0.5 * t).sin_cos();
            [c, s]
        })
        .collect();
    let mut out = vec![0.0; 1 << blocks.len()];
    for (j, tau) in taus.iter().enumerate() {
        let [c, s] = blocks[j];
        let term = expand(&blocks, Some((j, [-0.5 * tau * s, 0.5 * tau * c])));
        out.iter_mut().zip(term).for_each(|(o, t)| *o += t);
    }
    out
}

/// Kronecker product of the blocks, first block most significant.
fn expand(blocks: &[[f64; 2]], replace: Option<(usize, [f64; 2])>) -> Vec<f64> {
    let mut out = vec![1.0];
    for (j, b) in blocks.iter().enumerate() {
        let b = match replace {
            Some((r, alt)) if r == j => alt,
            _ => *b,
        };
        out = out.iter().flat_map(|x| [x * b[0], x * b[1]]).collect();
    }
    out
}
