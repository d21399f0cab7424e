use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Gaussian switching `χ(τ) = exp(−(τ − τ₀)² / 2T²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSwitching {
    width: f64,
    center: f64,
}

impl GaussianSwitching {
    pub fn new(width: f64, center: f64) -> Result<Self> {
        if !(width.is_finite() && width > 0.0) {
            return Err(Error::InvalidInput(format!(
                "switching width must be positive, got {width}"
            )));
        }
        if !center.is_finite() {
            return Err(Error::NonFinite("switching center"));
        }
        Ok(Self { width, center })
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn profile(&self, tau: f64) -> f64 {
        let s = (tau - self.center) / self.width;
        (-0.5 * s * s).exp()
    }

    /// `|χ̃(Ω)| = √(2π) T e^{−Ω²T²/2}`; the phase from `τ₀` drops out of every
    /// probability.
    pub fn fourier_magnitude(&self, omega: f64) -> f64 {
        let t = self.width;
        (2.0 * PI).sqrt() * t * (-0.5 * omega * omega * t * t).exp()
    }
}

/// `K(u) = ∫ χ(s + u/2) χ(s − u/2) ds = √π T e^{−u²/4T²}`.
pub fn switching_autocorrelation(chi: &GaussianSwitching, u: f64) -> f64 {
    let t = chi.width;
    PI.sqrt() * t * (-u * u / (4.0 * t * t)).exp()
}
