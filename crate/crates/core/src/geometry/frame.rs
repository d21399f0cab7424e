//! Acceleration and curvature data expressed in the Fermi frame of a worldline.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};

/// Rank-3 array `R_{0jik}` stored as `[j][i][k]`.
pub type Rank3 = [[[f64; 3]; 3]; 3];
/// Rank-4 array `R_{ikjl}` stored as `[i][k][j][l]`.
pub type Rank4 = [[[[f64; 3]; 3]; 3]; 3];

/// Frame components of the proper acceleration and the Riemann tensor at one
/// point `z(τ)` of a worldline.
///
/// Index conventions follow the frame `(e_0 = u, e_1, e_2, e_3)`; all spatial
/// indices run over `0..3` in storage.
#[derive(Debug, Clone, PartialEq)]
pub struct FermiFrameSample {
    /// Proper time along the worldline.
    pub tau: f64,
    /// `a_i(τ)`, inverse length.
    pub acceleration: Vector3<f64>,
    /// `R_{0i0j}(τ)`, the tidal (electric) part, inverse length squared.
    pub tidal: Matrix3<f64>,
    /// `R_{0jik}(τ)` stored as `[j][i][k]`.
    pub mixed: Rank3,
    /// `R_{ikjl}(τ)` stored as `[i][k][j][l]`.
    pub spatial: Rank4,
}

impl FermiFrameSample {
    /// Builds a sample after checking the storage symmetries: `tidal` must be
    /// exactly symmetric, and `spatial` must satisfy pair symmetry and
    /// antisymmetry in its first index pair with no tolerance.
    pub fn new(
        tau: f64,
        acceleration: Vector3<f64>,
        tidal: Matrix3<f64>,
        mixed: Rank3,
        spatial: Rank4,
    ) -> Result<Self> {
        let sample = Self {
            tau,
            acceleration,
            tidal,
            mixed,
            spatial,
        };
        sample.validate()?;
        Ok(sample)
    }

    /// Flat spacetime, inertial worldline.
    pub fn flat(tau: f64) -> Self {
        Self {
            tau,
            acceleration: Vector3::zeros(),
            tidal: Matrix3::zeros(),
            mixed: [[[0.0; 3]; 3]; 3],
            spatial: [[[[0.0; 3]; 3]; 3]; 3],
        }
    }

    /// Flat spacetime, worldline with proper acceleration `acceleration`.
    pub fn accelerated(tau: f64, acceleration: Vector3<f64>) -> Self {
        Self {
            acceleration,
            ..Self::flat(tau)
        }
    }

    /// Constant-curvature spacetime `R_{μναβ} = α(g_{μα}g_{νβ} − g_{μβ}g_{να})`
    /// seen from a worldline with acceleration `acceleration`.
    ///
    /// In the frame this gives `R_{0i0j} = −α δ_ij`, `R_{0jik} = 0` and
    /// `R_{ikjl} = α(δ_ij δ_kl − δ_il δ_kj)`.
    pub fn constant_curvature(tau: f64, alpha: f64, acceleration: Vector3<f64>) -> Self {
        let mut spatial = [[[[0.0; 3]; 3]; 3]; 3];
        for (i, ri) in spatial.iter_mut().enumerate() {
            for (k, rk) in ri.iter_mut().enumerate() {
                for (j, rj) in rk.iter_mut().enumerate() {
                    for (l, r) in rj.iter_mut().enumerate() {
                        *r = alpha * (delta(i, j) * delta(k, l) - delta(i, l) * delta(k, j));
                    }
                }
            }
        }
        Self {
            tau,
            acceleration,
            tidal: Matrix3::identity() * -alpha,
            mixed: [[[0.0; 3]; 3]; 3],
            spatial,
        }
    }

    /// Re-checks the storage invariants (fields are public).
    pub fn validate(&self) -> Result<()> {
        if !self.is_finite() {
            return Err(Error::NonFinite("Fermi frame sample"));
        }
        let defect = (self.tidal - self.tidal.transpose()).abs().max();
        if defect != 0.0 {
            return Err(Error::Asymmetric {
                what: "R_0i0j",
                defect,
            });
        }
        let mut defect: f64 = 0.0;
        for i in 0..3 {
            for k in 0..3 {
                for j in 0..3 {
                    for l in 0..3 {
                        let r = self.spatial[i][k][j][l];
                        defect = defect
                            .max((r - self.spatial[j][l][i][k]).abs())
                            .max((r + self.spatial[k][i][j][l]).abs());
                    }
                }
            }
        }
        if defect != 0.0 {
            return Err(Error::Asymmetric {
                what: "R_ikjl",
                defect,
            });
        }
        Ok(())
    }

    pub fn is_finite(&self) -> bool {
        self.tau.is_finite()
            && self.acceleration.iter().all(|v| v.is_finite())
            && self.tidal.iter().all(|v| v.is_finite())
            && self.mixed.iter().flatten().flatten().all(|v| v.is_finite())
            && self
                .spatial
                .iter()
                .flatten()
                .flatten()
                .flatten()
                .all(|v| v.is_finite())
    }

    /// Magnitude `|a_i|` of the proper acceleration.
    pub fn acceleration_norm(&self) -> f64 {
        self.acceleration.norm()
    }

    /// Same geometry, relabelled to proper time `tau`.
    pub fn at(&self, tau: f64) -> Self {
        Self {
            tau,
            ..self.clone()
        }
    }

    /// True when everything except `tau` matches.
    pub fn same_geometry(&self, other: &Self) -> bool {
        self.acceleration == other.acceleration
            && self.tidal == other.tidal
            && self.mixed == other.mixed
            && self.spatial == other.spatial
    }
}

fn delta(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

/// Closed proper-time interval on which a trajectory is defined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauRange {
    pub min: f64,
    pub max: f64,
}

impl TauRange {
    pub const ALL: TauRange = TauRange {
        min: f64::NEG_INFINITY,
        max: f64::INFINITY,
    };

    pub fn contains(&self, tau: f64) -> bool {
        tau >= self.min && tau <= self.max
    }
}

/// The family of worldlines the library can evaluate.
#[derive(Debug, Clone, PartialEq)]
pub enum TrajectoryKind {
    /// Geodesic in flat spacetime.
    Inertial,
    /// Uniform proper acceleration `a` along the first frame axis, flat
    /// spacetime (Rindler observer).
    UniformAcceleration(f64),
    /// Static observer with constant acceleration vector in a spacetime of
    /// constant curvature `alpha`.
    ConstantCurvatureStatic {
        alpha: f64,
        acceleration: Vector3<f64>,
    },
    /// Externally computed frame components, ordered by `tau`.
    Tabulated(Vec<FermiFrameSample>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryModel {
    pub kind: TrajectoryKind,
    pub tau_range: TauRange,
}

impl TrajectoryModel {
    pub fn inertial() -> Self {
        Self {
            kind: TrajectoryKind::Inertial,
            tau_range: TauRange::ALL,
        }
    }

    pub fn uniform_acceleration(a: f64) -> Self {
        Self {
            kind: TrajectoryKind::UniformAcceleration(a),
            tau_range: TauRange::ALL,
        }
    }

    pub fn constant_curvature(alpha: f64, acceleration: Vector3<f64>) -> Self {
        Self {
            kind: TrajectoryKind::ConstantCurvatureStatic {
                alpha,
                acceleration,
            },
            tau_range: TauRange::ALL,
        }
    }

    /// Tabulated trajectory. Samples are sorted by proper time and must be
    /// individually valid; the range spans the first to last sample.
    pub fn tabulated(mut samples: Vec<FermiFrameSample>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptySamples);
        }
        for s in &samples {
            s.validate()?;
        }
        samples.sort_by(|a, b| a.tau.total_cmp(&b.tau));
        let tau_range = TauRange {
            min: samples[0].tau,
            max: samples[samples.len() - 1].tau,
        };
        Ok(Self {
            kind: TrajectoryKind::Tabulated(samples),
            tau_range,
        })
    }

    pub fn with_range(mut self, min: f64, max: f64) -> Self {
        self.tau_range = TauRange { min, max };
        self
    }

    /// Frame components at proper time `tau`.
    ///
    /// Tabulated trajectories are sample-and-hold: the latest sample with
    /// `sample.tau <= tau` is returned, with no interpolation.
    pub fn frame_at(&self, tau: f64) -> Result<FermiFrameSample> {
        if !tau.is_finite() {
            return Err(Error::NonFinite("proper time"));
        }
        if !self.tau_range.contains(tau) {
            return Err(Error::OutOfRange {
                tau,
                min: self.tau_range.min,
                max: self.tau_range.max,
            });
        }
        let frame = match &self.kind {
            TrajectoryKind::Inertial => FermiFrameSample::flat(tau),
            TrajectoryKind::UniformAcceleration(a) => {
                FermiFrameSample::accelerated(tau, Vector3::new(*a, 0.0, 0.0))
            }
            TrajectoryKind::ConstantCurvatureStatic {
                alpha,
                acceleration,
            } => FermiFrameSample::constant_curvature(tau, *alpha, *acceleration),
            TrajectoryKind::Tabulated(samples) => {
                let idx = samples.partition_point(|s| s.tau <= tau);
                samples[idx.saturating_sub(1)].at(tau)
            }
        };
        Ok(frame)
    }

    /// The single frame of a trajectory whose geometry does not change with
    /// proper time. Tabulated trajectories qualify only when every sample
    /// carries the same components.
    pub fn constant_frame(&self) -> Result<FermiFrameSample> {
        match &self.kind {
            TrajectoryKind::Tabulated(samples) => {
                let first = &samples[0];
                if samples.iter().all(|s| s.same_geometry(first)) {
                    Ok(first.clone())
                } else {
                    Err(Error::TimeVaryingFrame)
                }
            }
            _ => {
                let tau = if self.tau_range.contains(0.0) {
                    0.0
                } else {
                    self.tau_range.min
                };
                self.frame_at(tau)
            }
        }
    }

    /// Proper times of the tabulated samples, if any.
    pub fn sample_times(&self) -> Option<Vec<f64>> {
        match &self.kind {
            TrajectoryKind::Tabulated(samples) => Some(samples.iter().map(|s| s.tau).collect()),
            _ => None,
        }
    }
}
