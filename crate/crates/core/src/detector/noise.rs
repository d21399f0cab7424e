//! Transitions of the detector's centre-of-mass oscillator driven by the
//! coupling to acceleration and curvature, `Ĥ_rel = m a_i x̂ⁱ + (m/2) R_0i0j x̂ⁱ x̂ʲ`.
//!
//! To first order in `Ĥ_rel` and for a frame that does not change while the
//! detector is on, the amplitude is `−i χ̃(Ω_mn) ⟨m|Ĥ_rel|n⟩`.

use super::udw::UDWDetector;
use crate::error::{Error, Result};
use crate::geometry::TrajectoryModel;
use crate::quantum::OscillatorSpec;

/// Occupation numbers of an isotropic oscillator. For a 1-D oscillator only
/// the first entry is used and the others must be zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FockState(pub [u32; 3]);

impl FockState {
    pub fn line(n: u32) -> Self {
        Self([n, 0, 0])
    }

    pub fn quanta(&self) -> u32 {
        self.0.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transition {
    pub from: FockState,
    pub to: FockState,
}

impl Transition {
    pub fn new(from: FockState, to: FockState) -> Self {
        Self { from, to }
    }
}

// ⟨p|x̂|q⟩ and ⟨p|x̂²|q⟩ on one axis, from x̂ = (â + â†)/√(2mω).
fn x1(p: u32, q: u32, m: f64, w: f64) -> f64 {
    let (p, q) = (p as f64, q as f64);
    let v = if p == q + 1.0 {
        p.sqrt()
    } else if p + 1.0 == q {
        q.sqrt()
    } else {
        0.0
    };
    v / (2.0 * m * w).sqrt()
}

fn x2(p: u32, q: u32, m: f64, w: f64) -> f64 {
    let (pf, qf) = (p as f64, q as f64);
    let v = if p == q {
        2.0 * qf + 1.0
    } else if p == q + 2 {
        ((qf + 1.0) * (qf + 2.0)).sqrt()
    } else if p + 2 == q {
        ((pf + 1.0) * (pf + 2.0)).sqrt()
    } else {
        0.0
    };
    v / (2.0 * m * w)
}

/// `⟨to| Ĥ_rel |from⟩` for constant `a` and `R_0i0j`.
fn rel_matrix_element(
    osc: &OscillatorSpec,
    acceleration: &nalgebra::Vector3<f64>,
    tidal: &nalgebra::Matrix3<f64>,
    t: &Transition,
) -> f64 {
    let (m, w) = (osc.m, osc.omega);
    let axes = osc.dimension as usize;
    let (p, q) = (t.to.0, t.from.0);
    // Kronecker delta on all axes except the listed ones.
    let spectators_equal = |skip: &[usize]| (0..axes).all(|k| skip.contains(&k) || p[k] == q[k]);

    let mut total = 0.0;
    for i in 0..axes {
        if spectators_equal(&[i]) {
            total += m * acceleration[i] * x1(p[i], q[i], m, w);
            total += 0.5 * m * tidal[(i, i)] * x2(p[i], q[i], m, w);
        }
        for j in 0..axes {
            if j != i && spectators_equal(&[i, j]) {
                total += 0.5 * m * tidal[(i, j)] * x1(p[i], q[i], m, w) * x1(p[j], q[j], m, w);
            }
        }
    }
    total
}

/// `p_rel = |χ̃(Ω_mn)|² |⟨m|Ĥ_rel|n⟩|²`, with `Ω_mn = ω (N_m − N_n)` the gap
/// of the unperturbed oscillator.
pub fn rel_noise_probability(
    det: &UDWDetector,
    trajectory: &TrajectoryModel,
    transition: &Transition,
) -> Result<f64> {
    let osc = det
        .internal
        .ok_or_else(|| Error::InvalidInput("detector has no internal oscillator".into()))?;
    if osc.omega <= 0.0 {
        return Err(Error::InvalidInput(
            "internal oscillator needs ω > 0 for ladder matrix elements".into(),
        ));
    }
    if transition.from == transition.to {
        return Err(Error::InvalidInput(
            "transition must change the state".into(),
        ));
    }
    if osc.dimension == 1 {
        let extra = |s: &FockState| s.0[1] != 0 || s.0[2] != 0;
        if extra(&transition.from) || extra(&transition.to) {
            return Err(Error::InvalidInput(
                "a 1-D oscillator only has occupation on the first axis".into(),
            ));
        }
    }
    let frame = trajectory.constant_frame()?;
    let element = rel_matrix_element(&osc, &frame.acceleration, &frame.tidal, transition);
    let gap = osc.omega * (transition.to.quanta() as f64 - transition.from.quanta() as f64);
    let chi = det.switching.fourier_magnitude(gap);
    Ok(chi * chi * element * element)
}
