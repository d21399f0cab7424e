//! Fermi-normal-coordinate geometry around a timelike worldline.
//!
//! All inputs are frame components (acceleration `a_i` and the Riemann
//! components `R_0i0j`, `R_0jik`, `R_ikjl`) at points of the worldline. From
//! them this module evaluates the second-order metric, the redshift factor of
//! the rest-space foliation, volume densities, and lower estimates of the
//! Fermi bound.

mod bound;
mod frame;
mod metric;

pub use bound::{
    fermi_bound, fermi_bound_profile, lambda_r, tau_fermi_bound, FermiBound, TauBound,
};
pub use frame::{FermiFrameSample, Rank3, Rank4, TauRange, TrajectoryKind, TrajectoryModel};
pub use metric::{
    eval_fermi_metric, redshift_exact, redshift_series, volume_factors, MetricComponents,
    VolumeFactors,
};
