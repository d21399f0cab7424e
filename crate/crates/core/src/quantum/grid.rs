use nalgebra::Vector3;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{eval_fermi_metric, volume_factors, FermiFrameSample};

/// Uniform 1-D grid on a segment of the rest surface, with the measure
/// density `√g_Σ` sampled at every point.
///
/// The first and last points are the box walls where wave functions vanish.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    weights: Vec<f64>,
}

impl Grid1D {
    pub const MIN_POINTS: usize = 8;

    /// Flat measure (`√g_Σ = 1`).
    pub fn uniform(n_points: usize, x_min: f64, x_max: f64) -> Result<Self> {
        Self::with_weights(n_points, x_min, x_max, |_| 1.0)
    }

    /// Measure density given as a function of the coordinate.
    pub fn with_weights(
        n_points: usize,
        x_min: f64,
        x_max: f64,
        weight: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        if n_points < Self::MIN_POINTS {
            return Err(Error::InvalidGrid(format!(
                "need at least {} points, got {n_points}",
                Self::MIN_POINTS
            )));
        }
        if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
            return Err(Error::InvalidGrid(format!(
                "bad interval [{x_min}, {x_max}]"
            )));
        }
        let spacing = (x_max - x_min) / (n_points - 1) as f64;
        let weights = (0..n_points)
            .map(|k| weight(x_min + k as f64 * spacing))
            .collect();
        Self::from_weights(x_min, x_max, weights)
    }

    /// Measure density given as samples, one per grid point.
    pub fn from_weights(x_min: f64, x_max: f64, weights: Vec<f64>) -> Result<Self> {
        if weights.len() < Self::MIN_POINTS {
            return Err(Error::InvalidGrid(format!(
                "need at least {} points, got {}",
                Self::MIN_POINTS,
                weights.len()
            )));
        }
        if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
            return Err(Error::InvalidGrid(format!(
                "bad interval [{x_min}, {x_max}]"
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidGrid(format!(
                "measure weights must be finite and positive, found {w}"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            weights,
        })
    }

    /// Grid along the line `x n̂` with the measure `√det h` of the
    /// second-order Fermi metric of `frame`.
    pub fn along_axis(
        n_points: usize,
        x_min: f64,
        x_max: f64,
        frame: &FermiFrameSample,
        axis: &Vector3<f64>,
    ) -> Result<Self> {
        let probe = Self::uniform(n_points, x_min, x_max)?;
        let weights = probe
            .coordinates()
            .map(|x| Ok(volume_factors(&eval_fermi_metric(frame, &(axis * x))?)?.sqrt_g_sigma))
            .collect::<Result<Vec<_>>>()?;
        Self::from_weights(x_min, x_max, weights)
    }

    pub fn n_points(&self) -> usize {
        self.weights.len()
    }

    /// Number of interior (unknown) points.
    pub fn interior_len(&self) -> usize {
        self.weights.len() - 2
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points() - 1) as f64
    }

    pub fn x(&self, k: usize) -> f64 {
        self.x_min + k as f64 * self.spacing()
    }

    pub fn coordinates(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points()).map(|k| self.x(k))
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Norm factor `√(w_k Δx)` mapping samples to measure-orthonormal
    /// coefficients.
    pub(crate) fn half_density(&self, k: usize) -> f64 {
        (self.weights[k] * self.spacing()).sqrt()
    }
}

/// Samples of a wave function on a [`Grid1D`]. Boundary samples are exactly
/// zero.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction<'g> {
    grid: &'g Grid1D,
    samples: Vec<Complex64>,
}

impl<'g> WaveFunction<'g> {
    pub fn from_samples(grid: &'g Grid1D, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.n_points() {
            return Err(Error::DimensionMismatch {
                expected: grid.n_points(),
                found: samples.len(),
            });
        }
        if !samples.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("wave function samples"));
        }
        let zero = Complex64::new(0.0, 0.0);
        if samples[0] != zero || samples[samples.len() - 1] != zero {
            return Err(Error::InvalidInput(
                "wave function must vanish on the box walls".into(),
            ));
        }
        Ok(Self { grid, samples })
    }

    /// Evaluates `f` at interior points; the walls are set to zero.
    pub fn from_fn(grid: &'g Grid1D, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let n = grid.n_points();
        let samples = (0..n)
            .map(|k| {
                if k == 0 || k == n - 1 {
                    Complex64::new(0.0, 0.0)
                } else {
                    f(grid.x(k))
                }
            })
            .collect();
        Self::from_samples(grid, samples)
    }

    pub fn from_real_fn(grid: &'g Grid1D, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    /// Rebuilds samples from measure-orthonormal interior coefficients.
    pub(crate) fn from_coefficients(grid: &'g Grid1D, coeffs: &[Complex64]) -> Self {
        let n = grid.n_points();
        let mut samples = vec![Complex64::new(0.0, 0.0); n];
        for (k, c) in coeffs.iter().enumerate() {
            samples[k + 1] = c / grid.half_density(k + 1);
        }
        Self { grid, samples }
    }

    /// Measure-orthonormal interior coefficients `√(w_k Δx) ψ_k`.
    pub(crate) fn coefficients(&self) -> Vec<Complex64> {
        (1..self.grid.n_points() - 1)
            .map(|k| self.samples[k] * self.grid.half_density(k))
            .collect()
    }

    pub fn grid(&self) -> &'g Grid1D {
        self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn norm(&self) -> f64 {
        self.coefficients()
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self {
            grid: self.grid,
            samples: self.samples.iter().map(|z| z / n).collect(),
        }
    }

    /// `⟨ψ| f(x̂) |ψ⟩` for a real function of position.
    pub fn expectation_of_position(&self, f: impl Fn(f64) -> f64) -> f64 {
        (1..self.grid.n_points() - 1)
            .map(|k| {
                self.samples[k].norm_sqr()
                    * f(self.grid.x(k))
                    * self.grid.weights[k]
                    * self.grid.spacing()
            })
            .sum()
    }
}

/// Discrete version of `(ψ, φ) = ∫ dΣ ψ* φ` with `dΣ = √g_Σ dx`:
/// `Σ_k conj(ψ_k) φ_k w_k Δx`. Interior trapezoid weights are `Δx`; the wall
/// terms vanish.
pub fn inner_product(psi: &WaveFunction<'_>, phi: &WaveFunction<'_>) -> Result<Complex64> {
    if !std::ptr::eq(psi.grid, phi.grid) && psi.grid != phi.grid {
        return Err(Error::GridMismatch);
    }
    let grid = psi.grid;
    let dx = grid.spacing();
    Ok((1..grid.n_points() - 1)
        .map(|k| psi.samples[k].conj() * phi.samples[k] * (grid.weights[k] * dx))
        .sum())
}
