//! Pointlike Unruh–DeWitt detectors on stationary trajectories in Minkowski
//! space.
//!
//! The transition probability has two second-order pieces: `p_field`, from
//! the coupling to the field, and `p_rel`, from the acceleration and
//! curvature coupling of the detector's own centre of mass. The detector is
//! a faithful probe of the field only when the second is small.

mod noise;
mod report;
mod response;
mod switching;
mod udw;
mod wightman;

pub use noise::{rel_noise_probability, FockState, Transition};
pub use report::{response_report, ResponseResult, DEFAULT_NOISE_THRESHOLD, EXCLUDED_TERMS};
pub use response::{
    default_epsilon, detailed_balance_ratio, field_response, raw_field_integral, DetailedBalance,
    FieldResponse, RawResponse,
};
pub use switching::{switching_autocorrelation, GaussianSwitching};
pub use udw::UDWDetector;
pub use wightman::{pulled_back_wightman, Trajectory, WightmanSpec};
