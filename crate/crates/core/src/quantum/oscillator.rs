//! Closed-form spectrum of an isotropic oscillator on a worldline with
//! constant acceleration and constant curvature `R_0i0j = −α δ_ij`.
//!
//! Completing the square in `m ω² x²/2 + m a·x − m α x²/2` gives an oscillator
//! of frequency `ω′ = √(ω² − α)` centred at `−a/ω′²`, lowered by `m a²/2ω′²`.

use nalgebra::Vector3;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorSpec {
    pub m: f64,
    pub omega: f64,
    /// 1 (a line along the first frame axis) or 3.
    pub dimension: u8,
}

impl OscillatorSpec {
    pub fn new(m: f64, omega: f64, dimension: u8) -> Result<Self> {
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::InvalidInput(format!(
                "oscillator mass must be positive, got {m}"
            )));
        }
        if !(omega.is_finite() && omega >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "oscillator frequency must be non-negative, got {omega}"
            )));
        }
        if dimension != 1 && dimension != 3 {
            return Err(Error::InvalidInput(format!(
                "oscillator dimension must be 1 or 3, got {dimension}"
            )));
        }
        Ok(Self {
            m,
            omega,
            dimension,
        })
    }

    /// Localization proxy `√(2n+1)/√(mω)` of the level with `n` quanta.
    pub fn localization(&self, quanta: u32) -> f64 {
        (2.0 * quanta as f64 + 1.0).sqrt() / (self.m * self.omega).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectedSpectrum {
    pub omega_prime: f64,
    pub displacement: Vector3<f64>,
    pub ground_shift: f64,
    /// False when `ω² ≤ α`: no bound states, the particle is pulled away.
    pub valid: bool,
    mass: f64,
    dimension: u8,
}

impl CorrectedSpectrum {
    /// Energy with `quanta` total excitations, rest mass included. `NaN` when
    /// the spectrum is not valid.
    pub fn level(&self, quanta: u32) -> f64 {
        if !self.valid {
            return f64::NAN;
        }
        let zero_point = 0.5 * self.dimension as f64;
        self.mass + self.ground_shift + self.omega_prime * (quanta as f64 + zero_point)
    }
}

/// Corrected frequency, displacement and ground-state shift.
///
/// In one dimension only the component of `a` along the line (the first frame
/// axis) acts; the transverse components are dropped.
pub fn oscillator_corrected_spectrum(
    spec: &OscillatorSpec,
    alpha: f64,
    a: &Vector3<f64>,
) -> CorrectedSpectrum {
    let a = if spec.dimension == 1 {
        Vector3::new(a[0], 0.0, 0.0)
    } else {
        *a
    };
    let w2 = spec.omega * spec.omega - alpha;
    let valid = w2 > 0.0 && w2.is_finite() && a.iter().all(|v| v.is_finite());
    if !valid {
        return CorrectedSpectrum {
            omega_prime: if w2 > 0.0 { w2.sqrt() } else { 0.0 },
            displacement: Vector3::repeat(f64::NAN),
            ground_shift: f64::NAN,
            valid: false,
            mass: spec.m,
            dimension: spec.dimension,
        };
    }
    CorrectedSpectrum {
        omega_prime: w2.sqrt(),
        displacement: -a / w2,
        ground_shift: -spec.m * a.norm_squared() / (2.0 * w2),
        valid: true,
        mass: spec.m,
        dimension: spec.dimension,
    }
}
