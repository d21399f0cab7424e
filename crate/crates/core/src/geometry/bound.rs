//! Fermi bound estimates `ℓ ≳ inf_τ 1/(a + √λ_R)`.

use std::fmt;

use nalgebra::{Matrix3, SymmetricEigen};

use super::frame::{FermiFrameSample, TrajectoryModel};
use crate::error::{Error, Result};

/// Largest positive eigenvalue of `−R_0i0j`, or zero when there is none.
///
/// Equivalently `max(0, max_{|n|=1} −R_0i0j nⁱ nʲ)`.
pub fn lambda_r(tidal: &Matrix3<f64>) -> Result<f64> {
    if !tidal.iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite("R_0i0j"));
    }
    let defect = (tidal - tidal.transpose()).abs().max();
    if defect != 0.0 {
        return Err(Error::Asymmetric {
            what: "R_0i0j",
            defect,
        });
    }
    let eig = SymmetricEigen::new(-tidal);
    Ok(eig.eigenvalues.max().max(0.0))
}

/// A length that may be infinite (flat spacetime, inertial worldline).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FermiBound {
    Finite(f64),
    Unbounded,
}

impl FermiBound {
    /// `1/(a + √λ_R)`, unbounded when the denominator vanishes.
    pub fn from_rates(acceleration: f64, lambda_r: f64) -> Self {
        let rate = acceleration + lambda_r.sqrt();
        if rate > 0.0 {
            FermiBound::Finite(1.0 / rate)
        } else {
            FermiBound::Unbounded
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            FermiBound::Finite(l) => l,
            FermiBound::Unbounded => f64::INFINITY,
        }
    }

    /// Strict comparison `length < self`.
    pub fn exceeds(self, length: f64) -> bool {
        match self {
            FermiBound::Finite(l) => length < l,
            FermiBound::Unbounded => true,
        }
    }

    pub fn min(self, other: FermiBound) -> FermiBound {
        match (self, other) {
            (FermiBound::Unbounded, b) | (b, FermiBound::Unbounded) => b,
            (FermiBound::Finite(a), FermiBound::Finite(b)) => FermiBound::Finite(a.min(b)),
        }
    }
}

impl fmt::Display for FermiBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FermiBound::Finite(l) => write!(f, "{l}"),
            FermiBound::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// τ-Fermi bound estimate from a single frame.
pub fn tau_fermi_bound(frame: &FermiFrameSample) -> Result<FermiBound> {
    Ok(FermiBound::from_rates(
        frame.acceleration_norm(),
        lambda_r(&frame.tidal)?,
    ))
}

/// One row of a bound profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauBound {
    pub tau: f64,
    pub acceleration: f64,
    pub lambda_r: f64,
    pub bound: FermiBound,
}

/// Per-sample τ-Fermi bounds along `traj`.
pub fn fermi_bound_profile(traj: &TrajectoryModel, tau_samples: &[f64]) -> Result<Vec<TauBound>> {
    if tau_samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    tau_samples
        .iter()
        .map(|&tau| {
            let frame = traj.frame_at(tau)?;
            let acceleration = frame.acceleration_norm();
            let lambda_r = lambda_r(&frame.tidal)?;
            Ok(TauBound {
                tau,
                acceleration,
                lambda_r,
                bound: FermiBound::from_rates(acceleration, lambda_r),
            })
        })
        .collect()
}

/// Infimum of the τ-Fermi bound estimates over the supplied samples. The grid
/// is used as given; no interpolation between samples.
pub fn fermi_bound(traj: &TrajectoryModel, tau_samples: &[f64]) -> Result<FermiBound> {
    Ok(fermi_bound_profile(traj, tau_samples)?
        .iter()
        .fold(FermiBound::Unbounded, |acc, row| acc.min(row.bound)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Vector3;

    #[test]
    fn lambda_r_examples() {
        assert_eq!(lambda_r(&Matrix3::zeros()).unwrap(), 0.0);
        let l = lambda_r(&(Matrix3::identity() * -0.04)).unwrap();
        assert!((l - 0.04).abs() < 1e-15);
        let l = lambda_r(&Matrix3::from_diagonal(&Vector3::new(0.01, -0.02, 0.005))).unwrap();
        assert!((l - 0.02).abs() < 1e-15);
        // All eigenvalues of −R negative: floored.
        assert_eq!(lambda_r(&(Matrix3::identity() * 0.3)).unwrap(), 0.0);
    }

    #[test]
    fn lambda_r_rejects_asymmetric() {
        let mut r = Matrix3::zeros();
        r[(1, 2)] = 0.5;
        assert!(matches!(lambda_r(&r), Err(Error::Asymmetric { .. })));
    }

    #[test]
    fn rindler_bound_is_inverse_acceleration() {
        let b = fermi_bound(&TrajectoryModel::uniform_acceleration(2.0), &[0.0, 1.0]).unwrap();
        assert_eq!(b, FermiBound::Finite(0.5));
    }

    #[test]
    fn inertial_unbounded() {
        let b = fermi_bound(&TrajectoryModel::inertial(), &[0.0, 1.0, 2.0]).unwrap();
        assert_eq!(b, FermiBound::Unbounded);
    }

    #[test]
    fn acceleration_and_curvature_combine() {
        let mut frame = FermiFrameSample::accelerated(0.0, Vector3::new(0.0, 1.0, 0.0));
        frame.tidal = Matrix3::from_diagonal(&Vector3::new(-1.0, 0.2, 0.0));
        let b = tau_fermi_bound(&frame).unwrap();
        assert_eq!(b, FermiBound::Finite(0.5));
    }

    #[test]
    fn empty_grid_rejected() {
        assert_eq!(
            fermi_bound(&TrajectoryModel::inertial(), &[]),
            Err(Error::EmptySamples)
        );
    }

    #[test]
    fn infimum_over_tabulated_samples() {
        let samples = (0..5)
            .map(|k| {
                FermiFrameSample::accelerated(k as f64, Vector3::new(1.0 + k as f64, 0.0, 0.0))
            })
            .collect();
        let traj = TrajectoryModel::tabulated(samples).unwrap();
        let taus = traj.sample_times().unwrap();
        assert_eq!(fermi_bound(&traj, &taus).unwrap(), FermiBound::Finite(0.2));
    }
}
