//! Vacuum Wightman functions of a massless scalar in 3+1 Minkowski space,
//! pulled back to stationary worldlines. They depend only on the proper-time
//! difference `u = τ − τ'`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Trajectory {
    InertialMinkowski,
    RindlerMinkowski { a: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WightmanSpec {
    pub trajectory: Trajectory,
    /// Regulator of the `u − iε` prescription, in proper time.
    pub epsilon: f64,
}

impl WightmanSpec {
    pub fn new(trajectory: Trajectory, epsilon: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::InvalidInput(format!(
                "epsilon must be positive, got {epsilon}"
            )));
        }
        if let Trajectory::RindlerMinkowski { a } = trajectory {
            if !(a.is_finite() && a > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "Rindler acceleration must be positive, got {a}"
                )));
            }
        }
        Ok(Self {
            trajectory,
            epsilon,
        })
    }

    pub fn inertial(epsilon: f64) -> Result<Self> {
        Self::new(Trajectory::InertialMinkowski, epsilon)
    }

    pub fn rindler(a: f64, epsilon: f64) -> Result<Self> {
        Self::new(Trajectory::RindlerMinkowski { a }, epsilon)
    }

    pub fn acceleration(&self) -> f64 {
        match self.trajectory {
            Trajectory::InertialMinkowski => 0.0,
            Trajectory::RindlerMinkowski { a } => a,
        }
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Self {
        Self { epsilon, ..*self }
    }
}

/// `1/sinh²(y) − 1/y²`, accurate both near the origin and far out.
pub(crate) fn inv_sinh2_minus_pole(y: Complex64) -> Complex64 {
    if y.norm() < 0.1 {
        let y2 = y * y;
        // −1/3 + y²/15 − 2y⁴/189 + y⁶/675 − 2y⁸/10395
        let c = [
            -1.0 / 3.0,
            1.0 / 15.0,
            -2.0 / 189.0,
            1.0 / 675.0,
            -2.0 / 10395.0,
        ];
        c.iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, k| acc * y2 + k)
    } else {
        inv_sinh2(y) - (y * y).inv()
    }
}

/// `1/sinh²(y)` without overflow for large `|Re y|`.
pub(crate) fn inv_sinh2(y: Complex64) -> Complex64 {
    // sinh² is even, so work with Re y ≥ 0.
    let y = if y.re < 0.0 { -y } else { y };
    if y.re > 20.0 {
        let q = (-2.0 * y).exp();
        4.0 * q / ((1.0 - q) * (1.0 - q))
    } else {
        let s = y.sinh();
        (s * s).inv()
    }
}

/// `−1/(4π²(u − iε)²)`, the short-distance part shared by both trajectories.
pub(crate) fn hadamard_pole(u: f64, epsilon: f64) -> Complex64 {
    let z = Complex64::new(u, -epsilon);
    -(z * z).inv() / (4.0 * PI * PI)
}

/// `W(u) − hadamard_pole(u)`: zero for inertial motion, smooth for Rindler.
pub(crate) fn regular_part(spec: &WightmanSpec, u: f64) -> Complex64 {
    match spec.trajectory {
        Trajectory::InertialMinkowski => Complex64::new(0.0, 0.0),
        Trajectory::RindlerMinkowski { a } => {
            let y = Complex64::new(u, -spec.epsilon) * (0.5 * a);
            -(a * a) / (16.0 * PI * PI) * inv_sinh2_minus_pole(y)
        }
    }
}

/// Inertial: `−1/(4π²(u − iε)²)`.
/// Rindler: `−a²/(16π² sinh²(a(u − iε)/2))`.
pub fn pulled_back_wightman(spec: &WightmanSpec, u: f64) -> Complex64 {
    match spec.trajectory {
        Trajectory::InertialMinkowski => hadamard_pole(u, spec.epsilon),
        Trajectory::RindlerMinkowski { a } => {
            let y = Complex64::new(u, -spec.epsilon) * (0.5 * a);
            -(a * a) / (16.0 * PI * PI) * inv_sinh2(y)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_matches_direct_at_switchover() {
        for y in [
            Complex64::new(0.099, 0.0),
            Complex64::new(0.07, -0.07),
            Complex64::new(0.0, 0.099),
        ] {
            let s = inv_sinh2_minus_pole(y);
            let d = inv_sinh2(y) - (y * y).inv();
            assert!((s - d).norm() < 1e-10, "{y}: {s} vs {d}");
        }
    }

    #[test]
    fn far_tail_is_finite() {
        let spec = WightmanSpec::rindler(10.0, 1e-4).unwrap();
        let w = pulled_back_wightman(&spec, 500.0);
        assert!(w.re.is_finite() && w.im.is_finite());
        assert!(w.re <= 0.0);
    }

    #[test]
    fn inertial_laurent() {
        let spec = WightmanSpec::inertial(1e-3).unwrap();
        let u = 2.0;
        let w = pulled_back_wightman(&spec, u);
        let lead = -1.0 / (4.0 * PI * PI * u * u);
        assert!(w.re < 0.0);
        assert!(((w.re - lead) / lead).abs() < 1e-6);
        assert!(w.im.abs() / w.re.abs() < 3.0 * spec.epsilon / u);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(WightmanSpec::inertial(0.0).is_err());
        assert!(WightmanSpec::rindler(-1.0, 1e-3).is_err());
    }
}
