//! LMG collective-spin model `H = ω S_z - (g/N) S_x²` for total spin
//! `S = N/2`, in the `S_z` basis ordered by ascending `m`.
//!
//! `H` couples `m` only to `m ± 2`, so it splits into two tridiagonal parity
//! sectors. The sector holding `m = -S` contains the ground state.

use faer::Mat;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{check_field, ParameterId};
use crate::config::Tolerances;
use crate::error::{invalid, Error, Result};
use crate::numerics::{symmetric_eig, ComplexMatrix, SymTridiagonal};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LmgParams {
    pub omega: f64,
    pub g: f64,
    pub n_spins: usize,
}

impl LmgParams {
    pub fn new(omega: f64, g: f64, n_spins: usize) -> Result<Self> {
        check_field(omega, g)?;
        check_spins(n_spins)?;
        Ok(Self { omega, g, n_spins })
    }

    pub fn dim(&self) -> usize {
        self.n_spins + 1
    }
}

fn check_spins(n_spins: usize) -> Result<()> {
    if n_spins < 2 {
        return Err(invalid(format!("n_spins must be at least 2, got {n_spins}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LmgGroundState {
    /// Length `N + 1`, ascending `m`; the largest-magnitude entry is positive.
    pub amplitudes: Vec<f64>,
    pub energy: f64,
    /// `E_1 - E_0` over the full spectrum.
    pub gap: f64,
    /// Gap to the next level of the same parity; derivatives only see this one.
    pub sector_gap: f64,
    /// `gap < degeneracy_rel * ||H||`.
    pub near_degenerate: bool,
}

impl LmgGroundState {
    pub fn complex_amplitudes(&self) -> Vec<Complex64> {
        self.amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect()
    }
}

fn m_value(i: usize, n_spins: usize) -> f64 {
    i as f64 - 0.5 * n_spins as f64
}

/// `⟨m|S_x²|m⟩`.
fn sx2_diag(i: usize, n_spins: usize) -> f64 {
    let s = 0.5 * n_spins as f64;
    let m = m_value(i, n_spins);
    0.5 * (s * (s + 1.0) - m * m)
}

/// `⟨m+2|S_x²|m⟩`.
fn sx2_off(i: usize, n_spins: usize) -> f64 {
    let s = 0.5 * n_spins as f64;
    let m = m_value(i, n_spins);
    0.25 * ((s - m) * (s + m + 1.0) * (s - m - 1.0) * (s + m + 2.0)).sqrt()
}

/// Dense `(N+1)×(N+1)` Hamiltonian.
pub fn lmg_hamiltonian(params: &LmgParams) -> ComplexMatrix {
    let n = params.n_spins;
    let c = params.g / n as f64;
    let mut h = ComplexMatrix::zeros(n + 1, n + 1);
    for i in 0..=n {
        h[(i, i)] = Complex64::new(params.omega * m_value(i, n) - c * sx2_diag(i, n), 0.0);
        if i + 2 <= n {
            let v = Complex64::new(-c * sx2_off(i, n), 0.0);
            h[(i, i + 2)] = v;
            h[(i + 2, i)] = v;
        }
    }
    h
}

/// Basis indices `parity, parity + 2, ...` of one sector.
fn sector_indices(n_spins: usize, parity: usize) -> Vec<usize> {
    (parity..=n_spins).step_by(2).collect()
}

fn sector_matrix(params: &LmgParams, parity: usize) -> SymTridiagonal {
    let n = params.n_spins;
    let c = params.g / n as f64;
    let idx = sector_indices(n, parity);
    let diag = idx
        .iter()
        .map(|&i| params.omega * m_value(i, n) - c * sx2_diag(i, n))
        .collect();
    let off = idx[..idx.len() - 1]
        .iter()
        .map(|&i| -c * sx2_off(i, n))
        .collect();
    SymTridiagonal::new(diag, off)
}

fn embed(n_spins: usize, parity: usize, v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; n_spins + 1];
    for (&i, &x) in sector_indices(n_spins, parity).iter().zip(v) {
        out[i] = x;
    }
    out
}

struct SectorSummary {
    parity: usize,
    tri: SymTridiagonal,
    energy: f64,
    gap: f64,
    sector_gap: f64,
    norm: f64,
}

fn summarize(params: &LmgParams) -> SectorSummary {
    let sectors = [sector_matrix(params, 0), sector_matrix(params, 1)];
    let lowest = [sectors[0].eigenvalue(0), sectors[1].eigenvalue(0)];
    let parity = if lowest[0] <= lowest[1] { 0 } else { 1 };
    let other = 1 - parity;
    let energy = lowest[parity];
    let tri = &sectors[parity];
    let sector_gap = if tri.dim() > 1 {
        tri.eigenvalue(1) - energy
    } else {
        f64::INFINITY
    };
    let gap = sector_gap.min(lowest[other] - energy).max(0.0);
    let norm = sectors
        .iter()
        .flat_map(|t| [t.eigenvalue(0).abs(), t.eigenvalue(t.dim() - 1).abs()])
        .fold(0.0, f64::max);
    SectorSummary {
        parity,
        tri: sectors[parity].clone(),
        energy,
        gap,
        sector_gap: sector_gap.max(0.0),
        norm,
    }
}

/// Lowest eigenpair, found by bisection and inverse iteration in the ground
/// parity sector.
pub fn lmg_ground_state(params: &LmgParams) -> Result<LmgGroundState> {
    check_field(params.omega, params.g)?;
    check_spins(params.n_spins)?;
    let s = summarize(params);
    let v = s.tri.eigenvector(s.energy);
    let tol = Tolerances::default().degeneracy_rel * s.norm;
    Ok(LmgGroundState {
        amplitudes: embed(params.n_spins, s.parity, &v),
        energy: s.energy,
        gap: s.gap,
        sector_gap: s.sector_gap,
        near_degenerate: s.gap < tol,
    })
}

/// `|∂ψ₀⟩ = Σ_{n>0} |n⟩⟨n|∂H|ψ₀⟩/(E₀ - E_n)` with `∂_ω H = S_z` and
/// `∂_g H = -S_x²/N`. Orthogonal to `|ψ₀⟩` by construction.
///
/// Only levels of the ground-state parity couple through `∂H`, so the guard
/// applies to the sector gap.
pub fn lmg_ground_state_grad(params: &LmgParams, wrt: ParameterId) -> Result<Vec<f64>> {
    let (_, grads) = lmg_sector_gradients(params)?;
    Ok(match wrt {
        ParameterId::Omega => grads[0].clone(),
        ParameterId::Coupling => grads[1].clone(),
    })
}

/// Ground state together with its ω and g derivatives (in that order), from
/// one dense eigendecomposition of the ground sector.
pub(crate) fn lmg_sector_gradients(params: &LmgParams) -> Result<(Vec<f64>, [Vec<f64>; 2])> {
    check_field(params.omega, params.g)?;
    check_spins(params.n_spins)?;
    let s = summarize(params);
    let n = params.n_spins;
    let idx = sector_indices(n, s.parity);
    let d = idx.len();
    let tri = &s.tri;
    let dense = Mat::from_fn(d, d, |i, j| {
        if i == j {
            tri.diag[i]
        } else if i + 1 == j {
            tri.off[i]
        } else if j + 1 == i {
            tri.off[j]
        } else {
            0.0
        }
    });
    let eig = symmetric_eig(&dense)?;
    let tol = Tolerances::default().degeneracy_rel * s.norm;
    if d > 1 {
        let gap = eig.values[1] - eig.values[0];
        if gap < tol {
            return Err(Error::NearDegenerate { gap, tolerance: tol });
        }
    }

    let mut psi: Vec<f64> = (0..d).map(|i| eig.vectors[(i, 0)]).collect();
    let lead = psi.iter().copied().fold(0.0f64, |a, b| if b.abs() > a.abs() { b } else { a });
    if lead < 0.0 {
        psi.iter_mut().for_each(|x| *x = -*x);
    }

    let c = 1.0 / n as f64;
    let dz: Vec<f64> = idx.iter().zip(&psi).map(|(&i, p)| m_value(i, n) * p).collect();
    let sx2 = SymTridiagonal::new(
        idx.iter().map(|&i| -c * sx2_diag(i, n)).collect(),
        idx[..d - 1].iter().map(|&i| -c * sx2_off(i, n)).collect(),
    );
    let dx = sx2.apply(&psi);

    let e0 = eig.values[0];
    let mut grads = [vec![0.0; d], vec![0.0; d]];
    for k in 1..d {
        let denom = e0 - eig.values[k];
        let col = (0..d).map(|i| eig.vectors[(i, k)]);
        let (pz, px) = col
            .clone()
            .zip(dz.iter().zip(&dx))
            .fold((0.0, 0.0), |(a, b), (v, (z, x))| (a + v * z, b + v * x));
        for (i, v) in col.enumerate() {
            grads[0][i] += v * pz / denom;
            grads[1][i] += v * px / denom;
        }
    }
    Ok((
        embed(n, s.parity, &psi),
        [embed(n, s.parity, &grads[0]), embed(n, s.parity, &grads[1])],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::hermitian_eig;
    use proptest::prelude::*;

    fn dot(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn decoupled_hamiltonian() {
        let h = lmg_hamiltonian(&LmgParams::new(1.0, 0.0, 2).unwrap());
        let expect = ComplexMatrix::diagonal(&[-1.0, 0.0, 1.0].map(|x| Complex64::new(x, 0.0)));
        assert!(h.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn pure_coupling_spectrum() {
        let p = LmgParams { omega: 0.0, g: 2.0, n_spins: 2 };
        let e = hermitian_eig(&lmg_hamiltonian(&p)).unwrap();
        for (got, want) in e.values.iter().zip([-1.0, -1.0, 0.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn decoupled_ground_state() {
        let s = lmg_ground_state(&LmgParams::new(1.0, 0.0, 2).unwrap()).unwrap();
        assert!((s.amplitudes[0] - 1.0).abs() < 1e-15);
        assert!(s.amplitudes[1..].iter().all(|a| a.abs() < 1e-15));
        assert!((s.energy + 1.0).abs() < 1e-14);
        assert!((s.gap - 1.0).abs() < 1e-14);
        assert!(!s.near_degenerate);
    }

    #[test]
    fn ground_state_matches_dense_solver() {
        for &(g, n) in &[(0.5, 20), (1.0, 31), (1.7, 40), (-0.8, 12), (3.0, 50)] {
            let p = LmgParams::new(1.0, g, n).unwrap();
            let s = lmg_ground_state(&p).unwrap();
            let e = hermitian_eig(&lmg_hamiltonian(&p)).unwrap();
            assert!((s.energy - e.values[0]).abs() < 1e-11 * (1.0 + e.values[0].abs()));
            assert!((s.gap - (e.values[1] - e.values[0])).abs() < 1e-10);
            let h = lmg_hamiltonian(&p);
            let resid = (0..=n)
                .map(|i| {
                    let hv: f64 = (0..=n).map(|j| h[(i, j)].re * s.amplitudes[j]).sum();
                    (hv - s.energy * s.amplitudes[i]).powi(2)
                })
                .sum::<f64>()
                .sqrt();
            assert!(resid < 1e-11 * n as f64);
            if s.gap > 1e-8 {
                let v0 = e.vectors.column(0);
                let ov: f64 = v0.iter().zip(&s.amplitudes).map(|(z, a)| z.re * a).sum();
                assert!((ov.abs() - 1.0).abs() < 1e-10);
            }
            if g >= 0.0 {
                assert!(s.energy <= -0.5 * n as f64 + 1e-12);
            }
            assert!((dot(&s.amplitudes, &s.amplitudes) - 1.0).abs() < 1e-12);
            let lead = s.amplitudes.iter().copied().fold(0.0f64, |a, b| if b.abs() > a.abs() { b } else { a });
            assert!(lead > 0.0);
        }
    }

    #[test]
    fn gradient_orthogonal_and_zero_when_decoupled() {
        let p = LmgParams::new(1.0, 0.5, 10).unwrap();
        let psi = lmg_ground_state(&p).unwrap().amplitudes;
        for wrt in ParameterId::ALL {
            let d = lmg_ground_state_grad(&p, wrt).unwrap();
            assert!(dot(&psi, &d).abs() < 1e-12);
        }
        let p0 = LmgParams::new(1.0, 0.0, 10).unwrap();
        let d = lmg_ground_state_grad(&p0, ParameterId::Omega).unwrap();
        assert!(d.iter().all(|x| x.abs() < 1e-15));
    }

    #[test]
    fn gradient_matches_central_difference() {
        let h = 1e-5;
        let p = LmgParams::new(1.0, 0.5, 10).unwrap();
        for wrt in ParameterId::ALL {
            let shift = |sgn: f64| {
                let mut q = p;
                match wrt {
                    ParameterId::Omega => q.omega += sgn * h,
                    ParameterId::Coupling => q.g += sgn * h,
                }
                lmg_ground_state(&q).unwrap().amplitudes
            };
            let (hi, lo) = (shift(1.0), shift(-1.0));
            let fd: Vec<f64> = hi.iter().zip(&lo).map(|(a, b)| (a - b) / (2.0 * h)).collect();
            let d = lmg_ground_state_grad(&p, wrt).unwrap();
            let diff = fd.iter().zip(&d).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
            let scale = dot(&d, &d).sqrt();
            assert!(diff <= 1e-6 * scale, "{wrt:?}: {diff} vs {scale}");
        }
    }

    #[test]
    fn deep_ordered_phase_is_flagged_but_differentiable() {
        let p = LmgParams::new(1.0, 8.0, 60).unwrap();
        let s = lmg_ground_state(&p).unwrap();
        assert!(s.near_degenerate);
        assert!(s.sector_gap > 1.0);
        assert!(lmg_ground_state_grad(&p, ParameterId::Coupling).is_ok());
    }

    #[test]
    fn deterministic() {
        let p = LmgParams::new(1.0, 1.1, 33).unwrap();
        assert_eq!(lmg_ground_state(&p).unwrap(), lmg_ground_state(&p).unwrap());
        assert_eq!(
            lmg_ground_state_grad(&p, ParameterId::Omega).unwrap(),
            lmg_ground_state_grad(&p, ParameterId::Omega).unwrap()
        );
    }

    #[test]
    fn rejects_bad_params() {
        assert!(LmgParams::new(1.0, 0.5, 1).is_err());
        assert!(LmgParams::new(-1.0, 0.5, 4).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn hamiltonian_hermitian(w in 0.1f64..3.0, g in -3.0f64..3.0, n in 2usize..51) {
            let h = lmg_hamiltonian(&LmgParams::new(w, g, n).unwrap());
            prop_assert_eq!(h.hermitian_defect(), 0.0);
        }

        #[test]
        fn energy_non_increasing_in_coupling(w in 0.2f64..2.0, g in -2.0f64..3.0, n in 2usize..41) {
            let e = |g: f64| lmg_ground_state(&LmgParams::new(w, g, n).unwrap()).unwrap().energy;
            let scale = 1e-12 * n as f64 * (w + g.abs());
            prop_assert!(e(g + 0.05) <= e(g) + scale);
        }
    }
}
