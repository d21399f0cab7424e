//! Position and momentum operators on a [`Grid1D`].
//!
//! Operators are stored as banded matrices acting on the measure-orthonormal
//! coefficients `u_k = √(w_k Δx) ψ_k` of the interior points. In that basis the
//! rest-surface inner product is the plain Euclidean one, so self-adjointness
//! with respect to `dΣ` is ordinary matrix Hermiticity.
//!
//! With `w = √g_Σ`, the momentum `p̂ψ = −i g_Σ^{-1/4} ∂(g_Σ^{1/4} ψ)` becomes
//! `−i D` on the coefficients for any positive measure, where `D` is an
//! antisymmetric central-difference matrix. The measure-dependence lives
//! entirely in the map between samples and coefficients.

use num_complex::Complex64;

use super::grid::{Grid1D, WaveFunction};
use crate::error::{Error, Result};

/// Accuracy order of the central finite-difference stencils.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StencilOrder {
    Second,
    Fourth,
    #[default]
    Sixth,
    Eighth,
}

impl StencilOrder {
    pub fn from_order(order: u32) -> Option<Self> {
        match order {
            2 => Some(Self::Second),
            4 => Some(Self::Fourth),
            6 => Some(Self::Sixth),
            8 => Some(Self::Eighth),
            _ => None,
        }
    }

    pub fn order(self) -> u32 {
        match self {
            Self::Second => 2,
            Self::Fourth => 4,
            Self::Sixth => 6,
            Self::Eighth => 8,
        }
    }

    /// `c_m` in `ψ'_j ≈ Σ_m c_m (ψ_{j+m} − ψ_{j−m}) / h`.
    fn first_derivative(self) -> &'static [f64] {
        match self {
            Self::Second => &[1.0 / 2.0],
            Self::Fourth => &[2.0 / 3.0, -1.0 / 12.0],
            Self::Sixth => &[3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0],
            Self::Eighth => &[4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0],
        }
    }

    /// `(d_0, [d_1..])` in `ψ''_j ≈ (d_0 ψ_j + Σ_m d_m (ψ_{j+m} + ψ_{j−m})) / h²`.
    fn second_derivative(self) -> (f64, &'static [f64]) {
        match self {
            Self::Second => (-2.0, &[1.0]),
            Self::Fourth => (-5.0 / 2.0, &[4.0 / 3.0, -1.0 / 12.0]),
            Self::Sixth => (-49.0 / 18.0, &[3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0]),
            Self::Eighth => (
                -205.0 / 72.0,
                &[8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0],
            ),
        }
    }
}

/// Matrix of an operator in the measure-orthonormal interior basis.
///
/// Storage is banded: only entries with `|i − j| <= bandwidth` are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    dim: usize,
    bandwidth: usize,
    // Row-major, (2b+1) slots per row; slot s holds column i + s − b.
    data: Vec<Complex64>,
    hermitian: bool,
}

/// Hermiticity tolerance for the `hermitian` flag, on `max |M − M†|`.
pub const HERMITIAN_TOL: f64 = 1e-12;

impl OperatorMatrix {
    pub fn zeros(dim: usize, bandwidth: usize) -> Self {
        Self {
            dim,
            bandwidth,
            data: vec![Complex64::new(0.0, 0.0); dim * (2 * bandwidth + 1)],
            hermitian: true,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_diagonal(&vec![1.0; dim])
    }

    pub fn from_diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), 0);
        for (i, v) in values.iter().enumerate() {
            m.data[i] = Complex64::new(*v, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    /// Whether the matrix passed the Hermiticity check when it was built.
    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        let b = self.bandwidth;
        if i >= self.dim || j >= self.dim || i.abs_diff(j) > b {
            None
        } else {
            Some(i * (2 * b + 1) + (j + b - i))
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.slot(i, j)
            .map_or(Complex64::new(0.0, 0.0), |s| self.data[s])
    }

    fn set(&mut self, i: usize, j: usize, value: Complex64) {
        let s = self.slot(i, j).expect("entry outside band");
        self.data[s] = value;
    }

    fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        let b = self.bandwidth;
        (0..self.dim).flat_map(move |i| {
            let lo = i.saturating_sub(b);
            let hi = (i + b).min(self.dim - 1);
            (lo..=hi).map(move |j| (i, j, self.get(i, j)))
        })
    }

    /// `max |M_ij − conj(M_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.entries()
            .map(|(i, j, v)| (v - self.get(j, i).conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Recomputes the `hermitian` flag.
    pub fn check_hermitian(mut self) -> Self {
        self.hermitian = self.hermiticity_defect() < HERMITIAN_TOL;
        self
    }

    /// Errors unless the matrix is Hermitian within [`HERMITIAN_TOL`].
    pub fn require_hermitian(self) -> Result<Self> {
        let defect = self.hermiticity_defect();
        if defect < HERMITIAN_TOL {
            Ok(Self {
                hermitian: true,
                ..self
            })
        } else {
            Err(Error::NotHermitian(defect))
        }
    }

    /// Largest magnitude of an imaginary part.
    pub fn max_imaginary(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let b = self.bandwidth;
        Ok((0..self.dim)
            .map(|i| {
                let lo = i.saturating_sub(b);
                let hi = (i + b).min(self.dim - 1);
                (lo..=hi).map(|j| self.get(i, j) * v[j]).sum()
            })
            .collect())
    }

    fn widened(&self, bandwidth: usize) -> Self {
        let mut out = Self::zeros(self.dim, bandwidth.max(self.bandwidth));
        for (i, j, v) in self.entries() {
            out.set(i, j, v);
        }
        out.hermitian = self.hermitian;
        out
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    /// `self + factor · other`.
    pub fn add_scaled(&self, other: &Self, factor: f64) -> Result<Self> {
        self.same_dim(other)?;
        let mut out = self.widened(other.bandwidth);
        for (i, j, v) in other.entries() {
            let cur = out.get(i, j);
            out.set(i, j, cur + v * factor);
        }
        out.hermitian = self.hermitian && other.hermitian;
        Ok(out)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            data: self.data.iter().map(|z| z * factor).collect(),
            ..self.clone()
        }
    }

    /// Adds `diag(values)` to the matrix.
    pub fn add_diagonal(&self, values: &[f64]) -> Result<Self> {
        if values.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: values.len(),
            });
        }
        let mut out = self.clone();
        for (i, v) in values.iter().enumerate() {
            let cur = out.get(i, i);
            out.set(i, i, cur + v);
        }
        Ok(out)
    }

    /// `½ (Γ M + M Γ)` for a real diagonal `Γ = diag(values)`.
    pub fn symmetrized_with_diagonal(&self, values: &[f64]) -> Result<Self> {
        if values.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: values.len(),
            });
        }
        let mut out = self.clone();
        for (i, j, v) in self.entries() {
            out.set(i, j, v * (0.5 * (values[i] + values[j])));
        }
        Ok(out)
    }

    /// Matrix product; bandwidths add.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let b = self.bandwidth + other.bandwidth;
        let mut out = Self::zeros(self.dim, b);
        for (i, k, v) in self.entries() {
            let lo = k.saturating_sub(other.bandwidth);
            let hi = (k + other.bandwidth).min(self.dim - 1);
            for j in lo..=hi {
                let cur = out.get(i, j);
                out.set(i, j, cur + v * other.get(k, j));
            }
        }
        out.hermitian = false;
        Ok(out.check_hermitian())
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let ab = self.mul(other)?;
        let ba = other.mul(self)?;
        Ok(ab.add_scaled(&ba, -1.0)?.check_hermitian())
    }

    /// Dense row-major copy of the real part.
    pub fn to_dense_real(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.dim * self.dim];
        for (i, j, v) in self.entries() {
            out[i * self.dim + j] = v.re;
        }
        out
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim * self.dim];
        for (i, j, v) in self.entries() {
            out[i * self.dim + j] = v;
        }
        out
    }
}

/// Discretised `x̂`, `p̂` and `p̂²` on one grid.
#[derive(Debug, Clone)]
pub struct GridOperatorSet<'g> {
    grid: &'g Grid1D,
    order: StencilOrder,
    /// `x̂`, diagonal in the grid coordinates.
    pub position: OperatorMatrix,
    /// `p̂ = −i D` on coefficients.
    pub momentum: OperatorMatrix,
    /// `p̂² = −Δ_h` with a compact second-difference stencil, which avoids
    /// the spurious zero modes of `(−i D)²` at the grid's Nyquist wavenumber.
    pub momentum_squared: OperatorMatrix,
}

/// Operators with the default stencil order.
pub fn build_grid_operators(grid: &Grid1D) -> GridOperatorSet<'_> {
    build_grid_operators_with(grid, StencilOrder::default())
}

pub fn build_grid_operators_with(grid: &Grid1D, order: StencilOrder) -> GridOperatorSet<'_> {
    let n = grid.interior_len();
    let h = grid.spacing();

    let positions: Vec<f64> = (1..=n).map(|k| grid.x(k)).collect();
    let position = OperatorMatrix::from_diagonal(&positions);

    let c = order.first_derivative();
    let mut momentum = OperatorMatrix::zeros(n, c.len());
    for i in 0..n {
        for (m, cm) in c.iter().enumerate() {
            let off = m + 1;
            // −i c_m / h on the superdiagonal, +i c_m / h below: Hermitian.
            let v = Complex64::new(0.0, -cm / h);
            if i + off < n {
                momentum.set(i, i + off, v);
            }
            if i >= off {
                momentum.set(i, i - off, -v);
            }
        }
    }

    let (d0, d) = order.second_derivative();
    let mut momentum_squared = OperatorMatrix::zeros(n, d.len());
    let h2 = h * h;
    // Stencil points past a wall are odd reflections of interior points,
    // ψ(wall − s) = −ψ(wall + s). The resulting matrix stays symmetric and
    // is diagonalised by the discrete sine basis, so box modes keep the full
    // stencil order right up to the walls.
    let np = n as isize + 1; // right wall index, left wall is 0
    let mut add = |i: usize, j: isize, v: f64| {
        let (j, sign) = if j <= 0 {
            (-j, -1.0)
        } else if j >= np {
            (2 * np - j, -1.0)
        } else {
            (j, 1.0)
        };
        if j > 0 && j < np {
            let j = j as usize - 1;
            let cur = momentum_squared.get(i, j);
            momentum_squared.set(i, j, cur + sign * v);
        }
    };
    for i in 0..n {
        let row = i as isize + 1;
        add(i, row, -d0 / h2);
        for (m, dm) in d.iter().enumerate() {
            let off = m as isize + 1;
            add(i, row + off, -dm / h2);
            add(i, row - off, -dm / h2);
        }
    }

    GridOperatorSet {
        grid,
        order,
        position: position.check_hermitian(),
        momentum: momentum.check_hermitian(),
        momentum_squared: momentum_squared.check_hermitian(),
    }
}

impl<'g> GridOperatorSet<'g> {
    pub fn grid(&self) -> &'g Grid1D {
        self.grid
    }

    pub fn order(&self) -> StencilOrder {
        self.order
    }

    /// Applies `op` to a wave function sampled on this set's grid.
    pub fn apply(&self, op: &OperatorMatrix, psi: &WaveFunction<'_>) -> Result<WaveFunction<'g>> {
        if psi.grid() != self.grid {
            return Err(Error::GridMismatch);
        }
        if op.dim() != self.grid.interior_len() {
            return Err(Error::DimensionMismatch {
                expected: self.grid.interior_len(),
                found: op.dim(),
            });
        }
        let out = op.apply(&psi.coefficients())?;
        Ok(WaveFunction::from_coefficients(self.grid, &out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stencils_are_consistent() {
        for order in [
            StencilOrder::Second,
            StencilOrder::Fourth,
            StencilOrder::Sixth,
            StencilOrder::Eighth,
        ] {
            // Σ 2 m c_m = 1 (exact on linear functions).
            let s: f64 = order
                .first_derivative()
                .iter()
                .enumerate()
                .map(|(m, c)| 2.0 * (m + 1) as f64 * c)
                .sum();
            assert!((s - 1.0).abs() < 1e-14, "{order:?}");
            // d_0 + 2 Σ d_m = 0 and Σ m² d_m = 1 (exact on quadratics).
            let (d0, d) = order.second_derivative();
            let s0: f64 = d0 + 2.0 * d.iter().sum::<f64>();
            let s2: f64 = d
                .iter()
                .enumerate()
                .map(|(m, v)| ((m + 1) as f64).powi(2) * v)
                .sum();
            assert!(s0.abs() < 1e-14 && (s2 - 1.0).abs() < 1e-14, "{order:?}");
        }
    }

    #[test]
    fn operators_are_hermitian() {
        let g = Grid1D::with_weights(64, -3.0, 3.0, |x| 1.0 + 0.1 * x * x).unwrap();
        let ops = build_grid_operators(&g);
        assert!(ops.position.is_hermitian());
        assert!(ops.momentum.is_hermitian());
        assert!(ops.momentum_squared.is_hermitian());
        assert_eq!(ops.momentum.hermiticity_defect(), 0.0);
    }

    #[test]
    fn constant_weights_give_plain_central_difference() {
        let g = Grid1D::with_weights(41, 0.0, 4.0, |_| 3.0).unwrap();
        let ops = build_grid_operators_with(&g, StencilOrder::Second);
        let psi = WaveFunction::from_real_fn(&g, |x| (x * (4.0 - x)).powi(2)).unwrap();
        let p = ops.apply(&ops.momentum, &psi).unwrap();
        let h = g.spacing();
        for k in 1..40 {
            let fd = (psi.samples()[k + 1] - psi.samples()[k - 1]) / (2.0 * h);
            let expected = Complex64::new(0.0, -1.0) * fd;
            assert!((p.samples()[k] - expected).norm() < 1e-10);
        }
        let xpsi = ops.apply(&ops.position, &psi).unwrap();
        for k in 1..40 {
            assert!((xpsi.samples()[k] - psi.samples()[k] * g.x(k)).norm() < 1e-12);
        }
    }

    #[test]
    fn banded_algebra() {
        let a = OperatorMatrix::from_diagonal(&[1.0, 2.0, 3.0]);
        let g = Grid1D::uniform(5, 0.0, 1.0);
        assert!(g.is_err());
        let g = Grid1D::uniform(10, 0.0, 1.0).unwrap();
        let ops = build_grid_operators_with(&g, StencilOrder::Second);
        let c = ops.position.commutator(&ops.momentum).unwrap();
        // i·(ψ_{k+1} + ψ_{k−1})/2 structure: purely imaginary, bandwidth 2 at most.
        assert!(c.get(3, 4).im > 0.0 && c.get(3, 3).norm() == 0.0);
        let s = a.symmetrized_with_diagonal(&[2.0, 2.0, 2.0]).unwrap();
        assert_eq!(s.get(2, 2).re, 6.0);
        assert!(a.add_diagonal(&[1.0]).is_err());
    }

    #[test]
    fn apply_rejects_foreign_grid() {
        let g = Grid1D::uniform(10, 0.0, 1.0).unwrap();
        let other = Grid1D::uniform(12, 0.0, 1.0).unwrap();
        let ops = build_grid_operators(&g);
        let psi = WaveFunction::from_real_fn(&other, |_| 1.0).unwrap();
        assert_eq!(
            ops.apply(&ops.momentum, &psi).unwrap_err(),
            Error::GridMismatch
        );
    }
}
