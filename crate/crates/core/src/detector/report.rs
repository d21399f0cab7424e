use super::noise::{rel_noise_probability, Transition};
use super::response::field_response;
use super::udw::UDWDetector;
use super::wightman::WightmanSpec;
use crate::error::{Error, Result};
use crate::geometry::TrajectoryModel;

/// Default for "p_rel much smaller than p_field".
pub const DEFAULT_NOISE_THRESHOLD: f64 = 0.1;

/// What the report leaves out: the mixed field/relativistic second-order
/// term has vanishing vacuum expectation for the field states considered here.
pub const EXCLUDED_TERMS: &str = "mixed field/rel second-order term excluded (odd field moment)";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponseResult {
    pub p_field: f64,
    pub p_rel: f64,
    /// `p_rel / p_field`, only when `p_field` exceeds ten times its error.
    pub noise_ratio: Option<f64>,
    /// Whether the excitation can be attributed to the field. Undefined
    /// together with `noise_ratio`.
    pub probe_valid: Option<bool>,
    pub converged: bool,
    pub quadrature_error_estimate: f64,
}

/// Splits the transition probability into the field part at the detector's
/// gap and the relativistic noise from the internal oscillator. A detector
/// without an internal oscillator has no noise term.
pub fn response_report(
    det: &UDWDetector,
    spec: &WightmanSpec,
    trajectory: &TrajectoryModel,
    transition: Option<&Transition>,
    threshold: f64,
) -> Result<ResponseResult> {
    let field = field_response(det, spec, det.gap)?;
    let p_rel = match (det.internal, transition) {
        (None, _) => 0.0,
        (Some(_), Some(t)) => rel_noise_probability(det, trajectory, t)?,
        (Some(_), None) => {
            return Err(Error::InvalidInput(
                "an internal oscillator needs a transition".into(),
            ))
        }
    };
    let resolved = field.value > 10.0 * field.error;
    let noise_ratio = resolved.then(|| p_rel / field.value);
    Ok(ResponseResult {
        p_field: field.value,
        p_rel,
        noise_ratio,
        probe_valid: noise_ratio.map(|r| r < threshold),
        converged: field.converged,
        quadrature_error_estimate: field.error,
    })
}
