//! Checks that a localized system fits inside the Fermi normal neighbourhood
//! and stays non-relativistic.

use crate::error::{Error, Result};
use crate::geometry::{tau_fermi_bound, FermiBound, FermiFrameSample};

use super::grid::WaveFunction;

/// Default for "⟨Ĥ_NR⟩ much smaller than m".
pub const DEFAULT_ENERGY_THRESHOLD: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityReport {
    pub localization: f64,
    pub bound: FermiBound,
    /// `⟨Ĥ_NR⟩ / m`.
    pub energy_ratio: f64,
    pub threshold: f64,
    pub localized_ok: bool,
    pub nonrelativistic_ok: bool,
}

/// `√⟨x̂²⟩` of a normalized state.
pub fn state_localization(psi: &WaveFunction<'_>) -> f64 {
    let n = psi.norm().powi(2);
    (psi.expectation_of_position(|x| x * x) / n).sqrt()
}

pub fn validity_report(
    localization: f64,
    frame: &FermiFrameSample,
    m: f64,
    h_nr_expectation: f64,
    threshold: f64,
) -> Result<ValidityReport> {
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::InvalidInput(format!(
            "mass must be positive, got {m}"
        )));
    }
    if !(localization.is_finite() && localization >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "localization must be a non-negative length, got {localization}"
        )));
    }
    if !h_nr_expectation.is_finite() || !threshold.is_finite() {
        return Err(Error::NonFinite("validity inputs"));
    }
    let bound = tau_fermi_bound(frame)?;
    let energy_ratio = h_nr_expectation / m;
    Ok(ValidityReport {
        localization,
        bound,
        energy_ratio,
        threshold,
        localized_ok: bound.exceeds(localization),
        nonrelativistic_ok: energy_ratio < threshold,
    })
}

/// CODATA 2018 values, SI units.
pub mod si {
    pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
    pub const HBAR: f64 = 1.054_571_817e-34;
    pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
    pub const FINE_STRUCTURE: f64 = 7.297_352_569_3e-3;
    pub const BOLTZMANN: f64 = 1.380_649e-23;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HydrogenValidity {
    /// Largest `a + c²√λ_R` (m/s²) for which level `n` fits in the neighbourhood.
    pub threshold: f64,
    pub valid: bool,
}

/// Unruh temperature `ħ a / (2π c k_B)` in kelvin.
pub fn unruh_temperature(a_si: f64) -> f64 {
    si::HBAR * a_si / (2.0 * std::f64::consts::PI * si::SPEED_OF_LIGHT * si::BOLTZMANN)
}

/// Whether a hydrogen atom in level `n`, with size `2n²/(α² m_e)` in natural
/// units, fits inside `1/(a + √λ_R)`.
///
/// In SI the condition becomes `a + c²√λ_R < α² m_e c³ / (2 n² ħ)`.
pub fn hydrogen_validity(n: u32, a_si: f64, lambda_r_si: f64) -> Result<HydrogenValidity> {
    if n < 1 {
        return Err(Error::InvalidInput(
            "principal quantum number must be at least 1".into(),
        ));
    }
    if !(a_si.is_finite() && a_si >= 0.0 && lambda_r_si.is_finite() && lambda_r_si >= 0.0) {
        return Err(Error::InvalidInput(
            "acceleration and λ_R must be finite and non-negative".into(),
        ));
    }
    let c = si::SPEED_OF_LIGHT;
    let n = n as f64;
    let threshold =
        si::FINE_STRUCTURE.powi(2) * si::ELECTRON_MASS * c.powi(3) / (2.0 * n * n * si::HBAR);
    let rate = a_si + c * c * lambda_r_si.sqrt();
    Ok(HydrogenValidity {
        threshold,
        valid: rate < threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Vector3;

    #[test]
    fn flat_inertial_always_localized() {
        let r = validity_report(1e6, &FermiFrameSample::flat(0.0), 1.0, 0.0, 0.01).unwrap();
        assert_eq!(r.bound, FermiBound::Unbounded);
        assert!(r.localized_ok && r.nonrelativistic_ok);
    }

    #[test]
    fn oscillator_against_acceleration() {
        let f = FermiFrameSample::accelerated(0.0, Vector3::new(0.5, 0.0, 0.0));
        let r = validity_report(1.0, &f, 1.0, 0.5, 0.01).unwrap();
        assert!(r.localized_ok);
        assert!(!r.nonrelativistic_ok);
        let f = FermiFrameSample::accelerated(0.0, Vector3::new(2.0, 0.0, 0.0));
        assert!(
            !validity_report(1.0, &f, 1.0, 0.0, 0.01)
                .unwrap()
                .localized_ok
        );
    }

    #[test]
    fn hydrogen_threshold() {
        let h = hydrogen_validity(1, 1e20, 0.0).unwrap();
        assert!(h.valid);
        assert!((h.threshold / 6.196e24 - 1.0).abs() < 1e-3);
        assert!(!hydrogen_validity(1, 1e27, 0.0).unwrap().valid);
        assert!(hydrogen_validity(0, 0.0, 0.0).is_err());
        assert!(hydrogen_validity(60_000, 0.0, 0.0).unwrap().valid);
        let t = unruh_temperature(h.threshold);
        assert!(t > 2.4e4 && t < 2.6e4);
    }
}
