use super::switching::GaussianSwitching;
use crate::error::{Error, Result};
use crate::quantum::OscillatorSpec;

/// A pointlike Unruh–DeWitt detector coupled linearly to a scalar field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UDWDetector {
    /// Energy gap `Ω` of the probed transition; positive for excitation.
    pub gap: f64,
    pub coupling: f64,
    pub switching: GaussianSwitching,
    /// Centre-of-mass oscillator whose coupling to acceleration and curvature
    /// produces the relativistic noise.
    pub internal: Option<OscillatorSpec>,
}

impl UDWDetector {
    pub fn new(
        gap: f64,
        coupling: f64,
        switching: GaussianSwitching,
        internal: Option<OscillatorSpec>,
    ) -> Result<Self> {
        if !gap.is_finite() {
            return Err(Error::NonFinite("detector gap"));
        }
        if !coupling.is_finite() {
            return Err(Error::NonFinite("detector coupling"));
        }
        Ok(Self {
            gap,
            coupling,
            switching,
            internal,
        })
    }

    pub fn with_gap(&self, gap: f64) -> Self {
        Self { gap, ..*self }
    }
}
