//! Non-relativistic quantum mechanics on the rest surfaces of a worldline.
//!
//! Wave functions live on a 1-D grid carrying the rest-surface measure.
//! Operators are banded matrices in a measure-orthonormal basis, so they are
//! Hermitian exactly when they are self-adjoint for `∫ dΣ ψ* φ`. Boundaries
//! are hard walls: a localized system is assumed to vanish outside the box.

mod grid;
mod hamiltonian;
mod operators;
mod oscillator;
mod spectrum;
mod validity;

pub use grid::{inner_product, Grid1D, WaveFunction};
pub use hamiltonian::{assemble_hamiltonian, Hamiltonian, HamiltonianMode, Potential};
pub use operators::{
    build_grid_operators, build_grid_operators_with, GridOperatorSet, OperatorMatrix, StencilOrder,
    HERMITIAN_TOL,
};
pub use oscillator::{oscillator_corrected_spectrum, CorrectedSpectrum, OscillatorSpec};
pub use spectrum::{diagonalize, Eigenpair};
pub use validity::{
    hydrogen_validity, si, state_localization, unruh_temperature, validity_report,
    HydrogenValidity, ValidityReport, DEFAULT_ENERGY_THRESHOLD,
};
