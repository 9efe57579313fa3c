//! Two-level Landau–Zener probe `H = (ω/2)σ_z - (g/2)σ_x`, basis `(↑, ↓)`.

use serde::{Deserialize, Serialize};

use super::{check_field, ParameterId};
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LzParams {
    pub omega: f64,
    pub g: f64,
}

impl LzParams {
    pub fn new(omega: f64, g: f64) -> Result<Self> {
        check_field(omega, g)?;
        Ok(Self { omega, g })
    }
}

pub fn lz_hamiltonian(params: &LzParams) -> ComplexMatrix {
    let (w, g) = (0.5 * params.omega, 0.5 * params.g);
    ComplexMatrix::from_real_row_major(2, 2, &[w, -g, -g, -w]).expect("2x2 shape")
}

/// Mixing angle `φ = atan2(g, ω)`; the ground state is
/// `(sin φ/2, cos φ/2)`.
fn mixing_angle(params: &LzParams) -> Result<f64> {
    let LzParams { omega, g } = *params;
    if !(omega.is_finite() && g.is_finite()) || (omega == 0.0 && g == 0.0) {
        return Err(Error::DegenerateParameters { omega, g });
    }
    Ok(g.atan2(omega))
}

/// Ground state in the `(↑, ↓)` basis, equal to
/// `(g, ω + r)/√(2r(r + ω))` with `r = √(ω² + g²)`.
pub fn lz_ground_state(params: &LzParams) -> Result<[f64; 2]> {
    let (s, c) = (0.5 * mixing_angle(params)?).sin_cos();
    Ok([s, c])
}

/// `∂ψ = (φ'/2)(cos φ/2, -sin φ/2)`, with `∂_ω φ = -g/r²` and `∂_g φ = ω/r²`.
pub fn lz_ground_state_grad(params: &LzParams, wrt: ParameterId) -> Result<[f64; 2]> {
    let (s, c) = (0.5 * mixing_angle(params)?).sin_cos();
    let r2 = params.omega * params.omega + params.g * params.g;
    let dphi = match wrt {
        ParameterId::Omega => -params.g / r2,
        ParameterId::Coupling => params.omega / r2,
    };
    Ok([0.5 * dphi * c, -0.5 * dphi * s])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn apply(h: &ComplexMatrix, v: [f64; 2]) -> [f64; 2] {
        [
            h[(0, 0)].re * v[0] + h[(0, 1)].re * v[1],
            h[(1, 0)].re * v[0] + h[(1, 1)].re * v[1],
        ]
    }

    #[test]
    fn decoupled_state_is_spin_down() {
        let v = lz_ground_state(&LzParams::new(1.0, 0.0).unwrap()).unwrap();
        assert_eq!(v, [0.0, 1.0]);
    }

    #[test]
    fn rejects_origin() {
        let p = LzParams { omega: 0.0, g: 0.0 };
        assert!(matches!(lz_ground_state(&p), Err(Error::DegenerateParameters { .. })));
        assert!(lz_ground_state_grad(&p, ParameterId::Omega).is_err());
    }

    #[test]
    fn strong_coupling_aligns_with_sigma_x() {
        let v = lz_ground_state(&LzParams::new(1.0, 1e4).unwrap()).unwrap();
        assert!((2.0 * v[0] * v[1] - 1.0).abs() < 1e-6);
    }

    #[test]
    fn gradient_matches_central_difference() {
        let h = 1e-6;
        for wrt in ParameterId::ALL {
            let p = LzParams::new(1.0, 0.5).unwrap();
            let shifted = |sgn: f64| {
                let mut q = p;
                match wrt {
                    ParameterId::Omega => q.omega += sgn * h,
                    ParameterId::Coupling => q.g += sgn * h,
                }
                lz_ground_state(&q).unwrap()
            };
            let (a, b) = (shifted(1.0), shifted(-1.0));
            let d = lz_ground_state_grad(&p, wrt).unwrap();
            for i in 0..2 {
                let fd = (a[i] - b[i]) / (2.0 * h);
                assert!((fd - d[i]).abs() <= 1e-6 * d[0].hypot(d[1]));
            }
        }
    }

    #[test]
    fn omega_derivative_vanishes_when_decoupled() {
        let d = lz_ground_state_grad(&LzParams::new(1.0, 0.0).unwrap(), ParameterId::Omega).unwrap();
        assert_eq!(d, [0.0, -0.0]);
    }

    proptest! {
        #[test]
        fn eigenvector_with_lower_energy(w in 0.01f64..5.0, g in -5.0f64..5.0) {
            let p = LzParams::new(w, g).unwrap();
            let v = lz_ground_state(&p).unwrap();
            prop_assert!((v[0] * v[0] + v[1] * v[1] - 1.0).abs() < 1e-15);
            let e0 = -0.5 * w.hypot(g);
            let hv = apply(&lz_hamiltonian(&p), v);
            prop_assert!((hv[0] - e0 * v[0]).abs() < 1e-14 * (1.0 + e0.abs()));
            prop_assert!((hv[1] - e0 * v[1]).abs() < 1e-14 * (1.0 + e0.abs()));
            let r = w.hypot(g);
            let norm = (2.0 * r * (r + w)).sqrt();
            prop_assert!((v[0] - g / norm).abs() < 1e-14);
            prop_assert!((v[1] - (w + r) / norm).abs() < 1e-14);
        }

        #[test]
        fn gradient_orthogonal_to_state(w in 0.01f64..5.0, g in -5.0f64..5.0) {
            let p = LzParams::new(w, g).unwrap();
            let v = lz_ground_state(&p).unwrap();
            for wrt in ParameterId::ALL {
                let d = lz_ground_state_grad(&p, wrt).unwrap();
                prop_assert!((v[0] * d[0] + v[1] * d[1]).abs() < 1e-15);
            }
        }
    }
}
