//! Localized quantum systems and particle detectors on worldlines in curved
//! spacetime.
//!
//! - [`geometry`]: second-order Fermi normal coordinates, redshift and volume
//!   factors, Fermi bound estimates.
//! - [`quantum`]: rest-surface wave functions, corrected Hamiltonians, spectra
//!   and validity checks.
//! - [`detector`]: Unruh–DeWitt response, relativistic noise and detailed
//!   balance.

pub mod detector;
pub mod error;
pub mod geometry;
pub mod quadrature;
pub mod quantum;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/quantum.md")]
    mod quantum {}
    #[doc = include_str!("../../../book/src/detectors.md")]
    mod detectors {}
}
