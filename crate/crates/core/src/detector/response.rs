//! Field-induced transition probability of a detector on a stationary
//! trajectory,
//!
//! ```text
//! p(Ω) = λ² ∫ du K(u) e^{−iΩu} W(u − iε),
//! ```
//!
//! evaluated at two regulators and extrapolated to `ε → 0`.
//!
//! The `1/(u − iε)²` pole of `W` is handled analytically. Writing
//! `f(u) = K(u) e^{−iΩu}`, the integrand is split as
//!
//! ```text
//! f W = f (W − S) + S (f − f(0) − f′(0) u) + S (f(0) + f′(0) u),
//! ```
//!
//! with `S` the pole term. The first two pieces are bounded near `u = 0` and
//! go to the adaptive quadrature; the last one integrates in closed form.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::switching::switching_autocorrelation;
use super::udw::UDWDetector;
use super::wightman::{regular_part, WightmanSpec};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureSettings};

/// Default regulator `10⁻³ · min(T, 1/a)` (just `10⁻³ T` when inertial).
pub fn default_epsilon(switching_width: f64, acceleration: f64) -> f64 {
    if acceleration > 0.0 {
        1e-3 * switching_width.min(1.0 / acceleration)
    } else {
        1e-3 * switching_width
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldResponse {
    /// Extrapolated `2 p(ε/2) − p(ε)`.
    pub value: f64,
    /// Quadrature error, imaginary residue and the size of the extrapolation
    /// step, added.
    pub error: f64,
    pub converged: bool,
    pub epsilon: f64,
    /// Real parts of the raw values at `ε` and `ε/2`.
    pub at_epsilon: f64,
    pub at_half_epsilon: f64,
}

/// Raw regulated integral at the spec's `ε`, with its quadrature error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawResponse {
    pub value: Complex64,
    pub error: f64,
    pub converged: bool,
}

fn scale(t: f64, omega: f64, a: f64) -> f64 {
    PI.sqrt() * (1.0 + t * (omega.abs() + a)) / (4.0 * PI * PI)
}

/// `e^z − 1 − z` without cancellation for small `|z|`.
fn exp_minus_linear(z: Complex64) -> Complex64 {
    if z.norm() < 0.1 {
        // z²/2! + z³/3! + … + z⁹/9!
        let mut term = z * z / 2.0;
        let mut sum = term;
        for k in 3..=9 {
            term = term * z / k as f64;
            sum += term;
        }
        sum
    } else {
        z.exp() - 1.0 - z
    }
}

fn breakpoints(epsilon: f64, width: f64, half_range: f64) -> Vec<f64> {
    let mut pos = Vec::new();
    let mut s = epsilon;
    while s < half_range {
        pos.push(s);
        s *= 10.0;
    }
    let mut s = width;
    while s < half_range.min(12.0 * width) {
        pos.push(s);
        s += width;
    }
    pos.push(half_range);
    pos.sort_by(f64::total_cmp);
    pos.dedup();
    let mut pts: Vec<f64> = pos.iter().rev().map(|x| -x).collect();
    pts.push(0.0);
    pts.extend(pos);
    pts
}

/// `∫ K(u) e^{−iΩu} W(u − iε) du` over `|u| ≤ U` at the spec's regulator,
/// without the `λ²` factor.
pub fn raw_field_integral(
    det: &UDWDetector,
    spec: &WightmanSpec,
    omega: f64,
) -> Result<RawResponse> {
    if !omega.is_finite() {
        return Err(Error::NonFinite("gap"));
    }
    let chi = det.switching;
    let t = chi.width();
    let eps = spec.epsilon;
    let a = spec.acceleration();
    let half_range = if omega == 0.0 {
        10.0 * t
    } else {
        10.0 * t.max(1.0 / omega.abs())
    };

    let f0 = PI.sqrt() * t;
    let f1 = Complex64::new(0.0, -omega) * f0;
    let integrand = |u: f64| -> Complex64 {
        let z = Complex64::new(-u * u / (4.0 * t * t), -omega * u);
        let f = z.exp() * switching_autocorrelation(&chi, 0.0);
        let smooth = f * regular_part(spec, u);
        let remainder = (exp_minus_linear(z) - u * u / (4.0 * t * t)) * f0;
        let pole = Complex64::new(u, -eps);
        smooth - remainder / (pole * pole) / (4.0 * PI * PI)
    };

    let settings = QuadratureSettings {
        abs_tol: 1e-12 * scale(t, omega, a),
        rel_tol: 1e-10,
        ..QuadratureSettings::default()
    };
    let q = integrate(integrand, &breakpoints(eps, t, half_range), &settings);

    let uu = half_range;
    let d = uu * uu + eps * eps;
    let a0 = Complex64::new(-2.0 * uu / d, 0.0);
    let a1 = Complex64::new(0.0, PI - 2.0 * (eps / uu).atan() - 2.0 * eps * uu / d);
    let closed = -(a0 * f0 + a1 * f1) / (4.0 * PI * PI);

    Ok(RawResponse {
        value: q.value + closed,
        error: q.error,
        converged: q.converged,
    })
}

/// Excitation probability `p_field(Ω)` to second order in the coupling.
///
/// `converged` is false when the quadrature missed its tolerance or the two
/// regulators disagree by more than 1 % (beyond a small absolute floor).
pub fn field_response(det: &UDWDetector, spec: &WightmanSpec, omega: f64) -> Result<FieldResponse> {
    let lambda2 = det.coupling * det.coupling;
    if lambda2 == 0.0 {
        return Ok(FieldResponse {
            value: 0.0,
            error: 0.0,
            converged: true,
            epsilon: spec.epsilon,
            at_epsilon: 0.0,
            at_half_epsilon: 0.0,
        });
    }
    let full = raw_field_integral(det, spec, omega)?;
    let half = raw_field_integral(det, &spec.with_epsilon(0.5 * spec.epsilon), omega)?;
    let extrapolated = half.value * 2.0 - full.value;

    let value = lambda2 * extrapolated.re;
    let step = lambda2 * (extrapolated.re - half.value.re).abs();
    let error = lambda2 * (2.0 * half.error + full.error + extrapolated.im.abs()) + step;
    let floor = 1e-9 * lambda2 * scale(det.switching.width(), omega, spec.acceleration());
    let spread = lambda2 * (full.value.re - half.value.re).abs();
    let converged = full.converged && half.converged && spread <= 0.01 * value.abs() + floor;

    Ok(FieldResponse {
        value,
        error,
        converged,
        epsilon: spec.epsilon,
        at_epsilon: lambda2 * full.value.re,
        at_half_epsilon: lambda2 * half.value.re,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetailedBalance {
    /// `p(Ω) / p(−Ω)`.
    pub measured: f64,
    /// `e^{−2πΩ/a}`.
    pub kms: f64,
    pub excitation: FieldResponse,
    pub deexcitation: FieldResponse,
}

impl DetailedBalance {
    pub fn converged(&self) -> bool {
        self.excitation.converged && self.deexcitation.converged
    }
}

/// Ratio of excitation to de-excitation probabilities against the thermal
/// value at the Unruh temperature `a/2π`. The detector should be switched on
/// long enough (`ΩT` and `aT` of at least a few) for the comparison to be
/// meaningful; that is left to the caller.
pub fn detailed_balance_ratio(
    det: &UDWDetector,
    spec: &WightmanSpec,
    omega: f64,
) -> Result<DetailedBalance> {
    let a = spec.acceleration();
    if a <= 0.0 {
        return Err(Error::InvalidInput(
            "detailed balance needs a Rindler trajectory with a > 0".into(),
        ));
    }
    let excitation = field_response(det, spec, omega)?;
    let deexcitation = field_response(det, spec, -omega)?;
    Ok(DetailedBalance {
        measured: excitation.value / deexcitation.value,
        kms: (-2.0 * PI * omega / a).exp(),
        excitation,
        deexcitation,
    })
}
