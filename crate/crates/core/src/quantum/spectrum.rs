//! Stationary states: lowest eigenpairs of an assembled Hamiltonian.

use faer::{Mat, Side};
use num_complex::Complex64;

use super::grid::WaveFunction;
use super::hamiltonian::Hamiltonian;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Eigenpair<'g> {
    /// Includes the rest mass.
    pub energy: f64,
    /// Normalized under the rest-surface measure.
    pub state: WaveFunction<'g>,
}

/// The `k` lowest eigenpairs, energies ascending.
///
/// The solve is dense. Real symmetric matrices (all the modes with a
/// real potential) use the real solver; anything else goes through the
/// complex Hermitian one.
pub fn diagonalize<'g>(h: &Hamiltonian<'g>, k: usize) -> Result<Vec<Eigenpair<'g>>> {
    let m = h.matrix();
    let n = m.dim();
    if k > n {
        return Err(Error::TooManyEigenpairs {
            requested: k,
            dimension: n,
        });
    }
    let defect = m.hermiticity_defect();
    if defect >= super::operators::HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }

    let (values, vectors): (Vec<f64>, Vec<Vec<Complex64>>) = if m.max_imaginary() == 0.0 {
        let dense = m.to_dense_real();
        let a = Mat::<f64>::from_fn(n, n, |i, j| dense[i * n + j]);
        let eig = a
            .self_adjoint_eigen(Side::Lower)
            .map_err(|_| Error::EigenSolver)?;
        let s = eig.S().column_vector();
        let u = eig.U();
        (0..k)
            .map(|c| {
                let v = (0..n).map(|r| Complex64::new(u[(r, c)], 0.0)).collect();
                (s[c], v)
            })
            .unzip()
    } else {
        let dense = m.to_dense();
        let a = Mat::<faer::c64>::from_fn(n, n, |i, j| {
            let z = dense[i * n + j];
            faer::c64::new(z.re, z.im)
        });
        let eig = a
            .self_adjoint_eigen(Side::Lower)
            .map_err(|_| Error::EigenSolver)?;
        let s = eig.S().column_vector();
        let u = eig.U();
        (0..k)
            .map(|c| {
                let v = (0..n)
                    .map(|r| {
                        let z = u[(r, c)];
                        Complex64::new(z.re, z.im)
                    })
                    .collect();
                (s[c].re, v)
            })
            .unzip()
    };

    if values.iter().any(|e| !e.is_finite()) {
        return Err(Error::EigenSolver);
    }
    Ok(values
        .into_iter()
        .zip(vectors)
        .map(|(energy, v)| Eigenpair {
            energy,
            state: WaveFunction::from_coefficients(h.grid(), &v),
        })
        .collect())
}
