//! Second-order Fermi-normal-coordinate metric, redshift factor and volume
//! elements.

use nalgebra::{Matrix3, Matrix4, Vector3};

use super::frame::FermiFrameSample;
use crate::error::{Error, Result};

/// Metric components in Fermi normal coordinates `(τ, x)` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricComponents {
    pub g_tt: f64,
    pub g_ti: Vector3<f64>,
    /// Induced metric `h_ij` on the rest surface.
    pub h: Matrix3<f64>,
}

impl MetricComponents {
    pub fn minkowski() -> Self {
        Self {
            g_tt: -1.0,
            g_ti: Vector3::zeros(),
            h: Matrix3::identity(),
        }
    }

    /// The full spacetime metric as a 4×4 matrix, index 0 being `τ`.
    pub fn to_matrix(&self) -> Matrix4<f64> {
        let mut g = Matrix4::zeros();
        g[(0, 0)] = self.g_tt;
        for i in 0..3 {
            g[(0, i + 1)] = self.g_ti[i];
            g[(i + 1, 0)] = self.g_ti[i];
            for j in 0..3 {
                g[(i + 1, j + 1)] = self.h[(i, j)];
            }
        }
        g
    }

    fn is_finite(&self) -> bool {
        self.g_tt.is_finite()
            && self.g_ti.iter().all(|v| v.is_finite())
            && self.h.iter().all(|v| v.is_finite())
    }
}

/// Metric at spatial Fermi coordinates `x`, truncated at second order in `|x|`:
///
/// ```text
/// g_ττ = −(1 + a_i xⁱ)² − R_0i0j xⁱ xʲ
/// g_τi = −(2/3) R_0jik xʲ xᵏ
/// h_ij = δ_ij − (1/3) R_ikjl xᵏ xˡ
/// ```
///
/// No validity radius is enforced here; callers decide how far out to go.
pub fn eval_fermi_metric(frame: &FermiFrameSample, x: &Vector3<f64>) -> Result<MetricComponents> {
    if !frame.is_finite() || !x.iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite("metric evaluation input"));
    }
    let lapse = 1.0 + frame.acceleration.dot(x);
    let g_tt = -lapse * lapse - (x.transpose() * frame.tidal * x)[(0, 0)];

    let mut g_ti = Vector3::zeros();
    let mut h = Matrix3::identity();
    for i in 0..3 {
        let mut shift = 0.0;
        for j in 0..3 {
            for k in 0..3 {
                shift += frame.mixed[j][i][k] * x[j] * x[k];
            }
        }
        g_ti[i] = -2.0 / 3.0 * shift;

        for j in 0..3 {
            let mut curv = 0.0;
            for k in 0..3 {
                for l in 0..3 {
                    curv += frame.spatial[i][k][j][l] * x[k] * x[l];
                }
            }
            h[(i, j)] -= curv / 3.0;
        }
    }
    let g = MetricComponents { g_tt, g_ti, h };
    if !g.is_finite() {
        return Err(Error::NonFinite("metric components"));
    }
    Ok(g)
}

fn inverse_spatial(h: &Matrix3<f64>) -> Result<Matrix3<f64>> {
    // Relative singularity test: |det h| against the scale of its entries.
    let scale = h.abs().max().max(f64::MIN_POSITIVE);
    let det = h.determinant();
    if !det.is_finite() || det.abs() <= 1e-14 * scale.powi(3) {
        return Err(Error::DegenerateMetric);
    }
    h.try_inverse().ok_or(Error::DegenerateMetric)
}

/// `g_ττ − g_τi g_τj hⁱʲ`, the inverse of `g^{ττ}`.
fn lapse_squared_signed(g: &MetricComponents) -> Result<f64> {
    let h_inv = inverse_spatial(&g.h)?;
    Ok(g.g_tt - (g.g_ti.transpose() * h_inv * g.g_ti)[(0, 0)])
}

/// Redshift factor `γ = |g_ττ − g_τi g_τj hⁱʲ|^{1/2}` of the `τ = const`
/// foliation.
pub fn redshift_exact(g: &MetricComponents) -> Result<f64> {
    if !g.is_finite() {
        return Err(Error::NonFinite("metric components"));
    }
    Ok(lapse_squared_signed(g)?.abs().sqrt())
}

/// Leading-order expansion `γ ≈ 1 + a_i xⁱ + ½ R_0i0j xⁱ xʲ`.
pub fn redshift_series(frame: &FermiFrameSample, x: &Vector3<f64>) -> f64 {
    1.0 + frame.acceleration.dot(x) + 0.5 * (x.transpose() * frame.tidal * x)[(0, 0)]
}

/// Spatial and spacetime volume densities at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeFactors {
    /// `√det h_ij`.
    pub sqrt_g_sigma: f64,
    /// `√−det g_μν`, from the full 4×4 determinant.
    pub sqrt_minus_g: f64,
}

/// Volume densities of the rest surface and of spacetime.
///
/// `√g_Σ` comes from a Cholesky factorisation of `h` (which also certifies
/// positive definiteness); `√−g` is computed independently from the 4×4
/// determinant, so `√g_Σ · γ = √−g` is a real consistency check.
pub fn volume_factors(g: &MetricComponents) -> Result<VolumeFactors> {
    if !g.is_finite() {
        return Err(Error::NonFinite("metric components"));
    }
    let chol = g.h.cholesky().ok_or(Error::NotPositiveDefinite)?;
    let sqrt_g_sigma: f64 = chol.l_dirty().diagonal().iter().product();
    let det = g.to_matrix().determinant();
    if det >= 0.0 {
        return Err(Error::DegenerateMetric);
    }
    Ok(VolumeFactors {
        sqrt_g_sigma,
        sqrt_minus_g: (-det).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn flat_inertial_metric() {
        let f = FermiFrameSample::flat(0.0);
        let g = eval_fermi_metric(&f, &Vector3::new(0.3, 0.0, 0.0)).unwrap();
        assert_eq!(g, MetricComponents::minkowski());
    }

    #[test]
    fn rindler_metric_on_axis() {
        let f = FermiFrameSample::accelerated(0.0, Vector3::new(1.0, 0.0, 0.0));
        let g = eval_fermi_metric(&f, &Vector3::new(0.1, 0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(g.g_tt, -1.21, epsilon = 1e-15);
        assert_eq!(g.g_ti, Vector3::zeros());
        assert_eq!(g.h, Matrix3::identity());
        assert_abs_diff_eq!(redshift_exact(&g).unwrap(), 1.1, epsilon = 1e-15);
        let v = volume_factors(&g).unwrap();
        assert_abs_diff_eq!(v.sqrt_g_sigma, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v.sqrt_minus_g, 1.1, epsilon = 1e-15);
    }

    #[test]
    fn constant_curvature_spatial_metric() {
        let f = FermiFrameSample::constant_curvature(0.0, 0.04, Vector3::zeros());
        let g = eval_fermi_metric(&f, &Vector3::new(0.0, 0.3, 0.0)).unwrap();
        // h_11 = 1 − (1/3)·α·y², h_22 untouched along the displacement.
        assert_abs_diff_eq!(g.h[(0, 0)], 0.9988, epsilon = 1e-15);
        assert_abs_diff_eq!(g.h[(1, 1)], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g.h[(2, 2)], 0.9988, epsilon = 1e-15);
    }

    #[test]
    fn redshift_with_shift_vector() {
        let g = MetricComponents {
            g_tt: -1.21,
            g_ti: Vector3::new(0.1, 0.0, 0.0),
            h: Matrix3::identity(),
        };
        assert_abs_diff_eq!(redshift_exact(&g).unwrap(), 1.22f64.sqrt(), epsilon = 1e-15);
        let v = volume_factors(&g).unwrap();
        assert_abs_diff_eq!(v.sqrt_g_sigma, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v.sqrt_minus_g, 1.22f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn minkowski_factors() {
        let g = MetricComponents::minkowski();
        assert_eq!(redshift_exact(&g).unwrap(), 1.0);
        let v = volume_factors(&g).unwrap();
        assert_eq!((v.sqrt_g_sigma, v.sqrt_minus_g), (1.0, 1.0));
    }

    #[test]
    fn series_values() {
        let f = FermiFrameSample::accelerated(0.0, Vector3::new(1.0, 0.0, 0.0));
        assert_eq!(redshift_series(&f, &Vector3::zeros()), 1.0);
        assert_abs_diff_eq!(
            redshift_series(&f, &Vector3::new(0.1, 0.0, 0.0)),
            1.1,
            epsilon = 1e-15
        );
        let mut f = FermiFrameSample::flat(0.0);
        f.tidal = Matrix3::identity() * -0.04;
        assert_abs_diff_eq!(
            redshift_series(&f, &Vector3::new(0.5, 0.0, 0.0)),
            0.995,
            epsilon = 1e-15
        );
    }

    #[test]
    fn singular_spatial_metric() {
        let mut g = MetricComponents::minkowski();
        g.h[(2, 2)] = 0.0;
        assert_eq!(redshift_exact(&g), Err(Error::DegenerateMetric));
        assert_eq!(volume_factors(&g), Err(Error::NotPositiveDefinite));
    }

    #[test]
    fn non_finite_input() {
        let f = FermiFrameSample::flat(0.0);
        let err = eval_fermi_metric(&f, &Vector3::new(f64::NAN, 0.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::NonFinite(_)));
    }
}
