use faer::Mat;
use serde::{Deserialize, Serialize};

use super::eigen::symmetric_eig;

use crate::error::{invalid, Result};

/// Largest Gauss-Hermite order accepted; beyond it the tail weights
/// underflow in double precision.
pub const MAX_GAUSS_HERMITE_ORDER: usize = 512;

/// Discrete probability rule: `E[f] ~ sum_m weights[m] * f(nodes[m])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn expect(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Gauss-Hermite rule for a normal distribution `N(mean, sigma^2)`.
///
/// Nodes are `mean + sqrt(2) sigma t_m` with `t_m` the roots of the physicists'
/// Hermite polynomial `H_M`, weights are normalized to sum to one, and nodes
/// come back ascending. `sigma == 0` collapses to the single node `mean`.
pub fn gauss_hermite(order: usize, mean: f64, sigma: f64) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(invalid("quadrature order must be at least 1"));
    }
    if order > MAX_GAUSS_HERMITE_ORDER {
        return Err(invalid(format!(
            "quadrature order {order} exceeds {MAX_GAUSS_HERMITE_ORDER}"
        )));
    }
    if !(sigma >= 0.0) || !sigma.is_finite() || !mean.is_finite() {
        return Err(invalid(format!("need finite mean and sigma >= 0, got ({mean}, {sigma})")));
    }
    if sigma == 0.0 {
        return Ok(QuadratureRule {
            nodes: vec![mean],
            weights: vec![1.0],
        });
    }
    let (t, w) = standard_hermite(order);
    let scale = std::f64::consts::SQRT_2 * sigma;
    Ok(QuadratureRule {
        nodes: t.iter().map(|&x| mean + scale * x).collect(),
        weights: w,
    })
}

/// Roots of `H_n` (ascending) and the matching weights divided by `sqrt(pi)`.
///
/// Starting points come from the Golub-Welsch eigenproblem; each root is then
/// polished by Newton steps on the orthonormal Hermite recurrence, which also
/// yields its weight. Only the positive half is computed and mirrored, so the
/// rule is exactly symmetric.
fn standard_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let half = n.div_ceil(2);
    let jacobi = Mat::<f64>::from_fn(n, n, |i, j| {
        if i + 1 == j || j + 1 == i {
            (i.max(j) as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    });
    let guesses = symmetric_eig(&jacobi)
        .expect("Jacobi matrix eigendecomposition")
        .values;

    // descending non-negative roots
    let mut x = vec![0.0; half];
    let mut w = vec![0.0; half];
    for i in 0..half {
        let mut z = guesses[n - 1 - i].max(0.0);
        if n % 2 == 1 && i == half - 1 {
            z = 0.0;
        }
        let (mut p, mut dp) = hermite_orthonormal(n, z);
        for _ in 0..4 {
            if dp == 0.0 || !dp.is_finite() {
                break;
            }
            let step = p / dp;
            let znew = z - step;
            if !znew.is_finite() {
                break;
            }
            z = znew;
            (p, dp) = hermite_orthonormal(n, z);
            if step.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        w[i] = if dp.is_finite() { 2.0 / (dp * dp) } else { 0.0 };
    }

    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..half {
        nodes.push(-x[i]);
        weights.push(w[i]);
    }
    for i in (0..n / 2).rev() {
        nodes.push(x[i]);
        weights.push(w[i]);
    }
    let total: f64 = weights.iter().sum();
    for wi in &mut weights {
        *wi /= total;
    }
    (nodes, weights)
}

/// Orthonormal Hermite polynomial of degree `n` at `z` and its derivative
/// (`sqrt(2n) p_{n-1}`).
fn hermite_orthonormal(n: usize, z: f64) -> (f64, f64) {
    const PI_M4: f64 = 0.751_125_544_464_942_5; // pi^(-1/4)
    let mut p1 = PI_M4;
    let mut p2 = 0.0;
    for j in 0..n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
    }
    (p1, (2.0 * n as f64).sqrt() * p2)
}
