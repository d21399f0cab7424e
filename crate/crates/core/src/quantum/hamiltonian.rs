//! Rest-space Hamiltonians for a particle confined to a line `x n̂`.

use nalgebra::Vector3;

use super::grid::Grid1D;
use super::operators::{GridOperatorSet, OperatorMatrix};
use crate::error::{Error, Result};
use crate::geometry::{eval_fermi_metric, redshift_exact, FermiFrameSample};

/// How the geometry enters the Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HamiltonianMode {
    /// `m + p̂²/2m + V(x̂)`, no geometric correction.
    Bare,
    /// `½ (γ(x̂) Ĥ + Ĥ γ(x̂))` with the exact redshift of the second-order metric.
    Symmetrized,
    /// `Ĥ + m a_i x̂ⁱ + (m/2) R_0i0j x̂ⁱ x̂ʲ`.
    #[default]
    Leading,
}

/// Non-relativistic potential `V(x)` along the line.
#[derive(Debug, Clone, PartialEq)]
pub enum Potential {
    Free,
    /// `m ω² x² / 2`.
    Harmonic {
        omega: f64,
    },
    /// One sample per grid point, walls included.
    Tabulated(Vec<f64>),
}

impl Potential {
    fn samples(&self, grid: &Grid1D, mass: f64) -> Result<Vec<f64>> {
        let interior = 1..grid.n_points() - 1;
        let v: Vec<f64> = match self {
            Potential::Free => vec![0.0; grid.interior_len()],
            Potential::Harmonic { omega } => interior
                .map(|k| 0.5 * mass * omega * omega * grid.x(k).powi(2))
                .collect(),
            Potential::Tabulated(values) => {
                if values.len() != grid.n_points() {
                    return Err(Error::DimensionMismatch {
                        expected: grid.n_points(),
                        found: values.len(),
                    });
                }
                values[interior].to_vec()
            }
        };
        if !v.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite("potential"));
        }
        Ok(v)
    }
}

/// An assembled Hamiltonian together with the grid it acts on.
#[derive(Debug, Clone)]
pub struct Hamiltonian<'g> {
    grid: &'g Grid1D,
    mass: f64,
    mode: HamiltonianMode,
    matrix: OperatorMatrix,
}

impl<'g> Hamiltonian<'g> {
    /// Wraps an operator built elsewhere (in the measure-orthonormal basis of
    /// `grid`); it must be Hermitian.
    pub fn from_matrix(grid: &'g Grid1D, mass: f64, matrix: OperatorMatrix) -> Result<Self> {
        if matrix.dim() != grid.interior_len() {
            return Err(Error::DimensionMismatch {
                expected: grid.interior_len(),
                found: matrix.dim(),
            });
        }
        Ok(Self {
            grid,
            mass,
            mode: HamiltonianMode::Bare,
            matrix: matrix.require_hermitian()?,
        })
    }

    pub fn grid(&self) -> &'g Grid1D {
        self.grid
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn mode(&self) -> HamiltonianMode {
        self.mode
    }

    pub fn matrix(&self) -> &OperatorMatrix {
        &self.matrix
    }
}

/// Builds the Hamiltonian in the requested mode. The rest mass is included as
/// `m·1`. `axis` is the unit direction of the line in the Fermi frame.
///
/// Every assembled matrix is checked for Hermiticity.
pub fn assemble_hamiltonian<'g>(
    ops: &GridOperatorSet<'g>,
    mass: f64,
    potential: &Potential,
    frame: &FermiFrameSample,
    axis: &Vector3<f64>,
    mode: HamiltonianMode,
) -> Result<Hamiltonian<'g>> {
    if !(mass.is_finite() && mass > 0.0) {
        return Err(Error::InvalidInput(format!(
            "mass must be positive, got {mass}"
        )));
    }
    if !axis.iter().all(|v| v.is_finite()) || (axis.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidInput("axis must be a unit vector".into()));
    }
    frame.validate()?;

    let grid = ops.grid();
    let mut diag = potential.samples(grid, mass)?;
    for v in &mut diag {
        *v += mass;
    }
    let bare = ops
        .momentum_squared
        .scaled(0.5 / mass)
        .add_diagonal(&diag)?;

    let xs: Vec<f64> = (1..grid.n_points() - 1).map(|k| grid.x(k)).collect();
    let matrix = match mode {
        HamiltonianMode::Bare => bare,
        HamiltonianMode::Leading => {
            let a_n = frame.acceleration.dot(axis);
            let r_nn = (axis.transpose() * frame.tidal * axis)[(0, 0)];
            let correction: Vec<f64> = xs
                .iter()
                .map(|x| mass * a_n * x + 0.5 * mass * r_nn * x * x)
                .collect();
            bare.add_diagonal(&correction)?
        }
        HamiltonianMode::Symmetrized => {
            let gamma = xs
                .iter()
                .map(|x| redshift_exact(&eval_fermi_metric(frame, &(axis * *x))?))
                .collect::<Result<Vec<_>>>()?;
            bare.symmetrized_with_diagonal(&gamma)?
        }
    };

    Ok(Hamiltonian {
        grid,
        mass,
        mode,
        matrix: matrix.require_hermitian()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::operators::build_grid_operators;

    fn unit_x() -> Vector3<f64> {
        Vector3::new(1.0, 0.0, 0.0)
    }

    #[test]
    fn modes_agree_without_geometry() {
        let g = Grid1D::uniform(101, -5.0, 5.0).unwrap();
        let ops = build_grid_operators(&g);
        let f = FermiFrameSample::flat(0.0);
        let pot = Potential::Harmonic { omega: 1.0 };
        let mats: Vec<_> = [
            HamiltonianMode::Bare,
            HamiltonianMode::Symmetrized,
            HamiltonianMode::Leading,
        ]
        .iter()
        .map(|m| assemble_hamiltonian(&ops, 1.0, &pot, &f, &unit_x(), *m).unwrap())
        .collect();
        assert_eq!(mats[0].matrix(), mats[1].matrix());
        assert_eq!(mats[0].matrix(), mats[2].matrix());
    }

    #[test]
    fn leading_adds_linear_diagonal() {
        let g = Grid1D::uniform(51, -5.0, 5.0).unwrap();
        let ops = build_grid_operators(&g);
        let f = FermiFrameSample::accelerated(0.0, Vector3::new(0.09, 0.0, 0.0));
        let pot = Potential::Harmonic { omega: 1.0 };
        let bare =
            assemble_hamiltonian(&ops, 1.0, &pot, &f, &unit_x(), HamiltonianMode::Bare).unwrap();
        let lead =
            assemble_hamiltonian(&ops, 1.0, &pot, &f, &unit_x(), HamiltonianMode::Leading).unwrap();
        let diff = lead.matrix().add_scaled(bare.matrix(), -1.0).unwrap();
        for i in 0..g.interior_len() {
            for j in 0..g.interior_len() {
                let expected = if i == j { 0.09 * g.x(i + 1) } else { 0.0 };
                assert!((diff.get(i, j).re - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = Grid1D::uniform(20, -1.0, 1.0).unwrap();
        let ops = build_grid_operators(&g);
        let f = FermiFrameSample::flat(0.0);
        let r = assemble_hamiltonian(
            &ops,
            0.0,
            &Potential::Free,
            &f,
            &unit_x(),
            HamiltonianMode::Bare,
        );
        assert!(r.is_err());
        let r = assemble_hamiltonian(
            &ops,
            1.0,
            &Potential::Free,
            &f,
            &Vector3::new(1.0, 1.0, 0.0),
            HamiltonianMode::Bare,
        );
        assert!(r.is_err());
        let r = assemble_hamiltonian(
            &ops,
            1.0,
            &Potential::Tabulated(vec![0.0; 3]),
            &f,
            &unit_x(),
            HamiltonianMode::Bare,
        );
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
        let mut bad = f.clone();
        bad.tidal[(0, 1)] = 1e-3;
        let r = assemble_hamiltonian(
            &ops,
            1.0,
            &Potential::Free,
            &bad,
            &unit_x(),
            HamiltonianMode::Leading,
        );
        assert!(matches!(r, Err(Error::Asymmetric { .. })));
    }
}
