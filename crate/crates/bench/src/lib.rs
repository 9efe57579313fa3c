//! Workloads shared by the criterion benches.

use critqfi::uncertainty::{GaussianBelief, Probe};

/// Ising sizes that the dense path still handles.
pub const DENSE_SIZES: [usize; 3] = [8, 12, 16];

/// Ising sizes for the low-rank path.
pub const LOWRANK_SIZES: [usize; 3] = [16, 64, 128];

/// Belief centred on the critical point with a tenth of ω spread.
pub fn critical_belief(nodes: usize) -> GaussianBelief {
    GaussianBelief::new(1.0, 0.1, nodes).expect("valid belief")
}

pub fn ising(n_spins: usize) -> Probe {
    Probe::Ising { n_spins }
}
