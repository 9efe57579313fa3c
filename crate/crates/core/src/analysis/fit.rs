use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// `y ≈ prefactor · x^exponent` from least squares on `(ln x, ln y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub prefactor: f64,
    pub exponent: f64,
    /// RMS of the log-space residuals.
    pub rms_residual: f64,
    pub points_used: usize,
}

pub fn power_law_fit(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    if points.len() < 3 {
        return Err(invalid(format!("power-law fit needs at least 3 points, got {}", points.len())));
    }
    if let Some(&(x, y)) = points.iter().find(|(x, y)| !(*x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())) {
        return Err(invalid(format!("power-law fit needs positive finite data, got ({x}, {y})")));
    }
    let n = points.len() as f64;
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(invalid("power-law fit needs at least two distinct x values"));
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = logs
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    Ok(PowerLawFit {
        prefactor: intercept.exp(),
        exponent: slope,
        rms_residual: (ss / n).sqrt(),
        points_used: points.len(),
    })
}

/// Region of the `N`-scaling of the peak QFI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalingClass {
    /// `b < 1`.
    SubLinear,
    /// `1 <= b <= 2`.
    SuperLinear,
    /// `b > 2`.
    SuperQuadratic,
}

impl ScalingClass {
    pub fn label(self) -> &'static str {
        match self {
            ScalingClass::SubLinear => "sub-linear",
            ScalingClass::SuperLinear => "super-linear",
            ScalingClass::SuperQuadratic => "super-quadratic",
        }
    }
}

/// Boundaries belong to the lower class.
pub fn scaling_class(fit: &PowerLawFit) -> ScalingClass {
    match fit.exponent {
        b if b > 2.0 => ScalingClass::SuperQuadratic,
        b if b >= 1.0 => ScalingClass::SuperLinear,
        _ => ScalingClass::SubLinear,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn with_exponent(b: f64) -> PowerLawFit {
        PowerLawFit {
            prefactor: 1.0,
            exponent: b,
            rms_residual: 0.0,
            points_used: 3,
        }
    }

    #[test]
    fn exact_cubic() {
        let pts: Vec<_> = [1.0, 2.0, 3.0, 5.0].iter().map(|&x: &f64| (x, 2.0 * x.powi(3))).collect();
        let f = power_law_fit(&pts).unwrap();
        assert!((f.prefactor - 2.0).abs() < 1e-12);
        assert!((f.exponent - 3.0).abs() < 1e-12);
        assert!(f.rms_residual < 1e-12);
        assert_eq!(f.points_used, 4);
    }

    #[test]
    fn flat_data() {
        let f = power_law_fit(&[(1.0, 0.7), (4.0, 0.7), (9.0, 0.7)]).unwrap();
        assert!(f.exponent.abs() < 1e-14);
        assert!((f.prefactor - 0.7).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(power_law_fit(&[(1.0, 1.0), (2.0, 2.0)]).is_err());
        assert!(power_law_fit(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]).is_err());
        assert!(power_law_fit(&[(-1.0, 1.0), (2.0, 1.0), (3.0, 1.0)]).is_err());
        assert!(power_law_fit(&[(2.0, 1.0), (2.0, 3.0), (2.0, 1.0)]).is_err());
    }

    #[test]
    fn class_boundaries() {
        assert_eq!(scaling_class(&with_exponent(2.0)), ScalingClass::SuperLinear);
        assert_eq!(scaling_class(&with_exponent(1.0)), ScalingClass::SuperLinear);
        assert_eq!(scaling_class(&with_exponent(0.5)), ScalingClass::SubLinear);
        assert_eq!(scaling_class(&with_exponent(2.3)), ScalingClass::SuperQuadratic);
        assert_eq!(ScalingClass::SuperQuadratic.label(), "super-quadratic");
    }

    proptest! {
        #[test]
        fn recovers_exact_power_laws(a in 0.01f64..100.0, b in -3.0f64..3.0, n in 3usize..12) {
            let pts: Vec<_> = (1..=n).map(|i| (i as f64 * 1.7, a * (i as f64 * 1.7).powf(b))).collect();
            let f = power_law_fit(&pts).unwrap();
            prop_assert!((f.exponent - b).abs() < 1e-10);
            prop_assert!((f.prefactor / a - 1.0).abs() < 1e-10);
            prop_assert!(f.rms_residual >= 0.0 && f.rms_residual < 1e-10);
        }
    }
}
