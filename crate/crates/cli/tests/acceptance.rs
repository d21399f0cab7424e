//! One line per acceptance criterion; non-zero exit if any fails.

use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use worldtube::detector::*;
use worldtube::geometry::*;
use worldtube::quantum::*;

/// Outcome of one check: pass flag and a short measured summary.
type Check = (bool, String);

fn symmetric(rng: &mut StdRng, scale: f64) -> Matrix3<f64> {
    let mut m = Matrix3::zeros();
    for i in 0..3 {
        for j in i..3 {
            let v = scale * rng.random_range(-1.0..1.0);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

fn unit_vector(rng: &mut StdRng) -> Vector3<f64> {
    loop {
        let v = Vector3::from_fn(|_, _| rng.random_range(-1.0..1.0));
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return v / n;
        }
    }
}

/// Frame whose spatial Riemann part is built from a symmetric matrix so the
/// pair symmetries hold.
fn random_frame(rng: &mut StdRng, scale: f64) -> FermiFrameSample {
    let acceleration = Vector3::from_fn(|_, _| scale * rng.random_range(-1.0..1.0));
    let tidal = symmetric(rng, scale);
    let s = symmetric(rng, scale.sqrt());
    let mut spatial = [[[[0.0; 3]; 3]; 3]; 3];
    for i in 0..3 {
        for k in 0..3 {
            for j in 0..3 {
                for l in 0..3 {
                    spatial[i][k][j][l] = s[(i, j)] * s[(k, l)] - s[(i, l)] * s[(k, j)];
                }
            }
        }
    }
    let mut mixed = [[[0.0; 3]; 3]; 3];
    for row in mixed.iter_mut() {
        for i in 0..3 {
            for k in (i + 1)..3 {
                let v = scale * rng.random_range(-1.0..1.0);
                row[i][k] = v;
                row[k][i] = -v;
            }
        }
    }
    FermiFrameSample::new(0.0, acceleration, tidal, mixed, spatial).unwrap()
}

fn rindler_bound() -> Check {
    let mut worst: f64 = 0.0;
    for a in [0.5, 1.0, 2.0, 10.0] {
        let b = fermi_bound(&TrajectoryModel::uniform_acceleration(a), &[0.0, 0.5, 1.0]).unwrap();
        worst = worst.max((b.as_f64() - 1.0 / a).abs());
    }
    (worst < 1e-12, format!("max |ell - 1/a| = {worst:.2e}"))
}

fn volume_identity() -> Check {
    let mut rng = StdRng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let b = Matrix3::from_fn(|_, _| rng.random_range(-1.0..1.0));
        let h = b * b.transpose() + Matrix3::identity() * 0.5;
        let g = MetricComponents {
            g_tt: -rng.random_range(0.5..2.0),
            g_ti: Vector3::from_fn(|_, _| rng.random_range(-0.2..0.2)),
            h,
        };
        let v = volume_factors(&g).unwrap();
        let gamma = redshift_exact(&g).unwrap();
        worst = worst.max((v.sqrt_g_sigma * gamma - v.sqrt_minus_g).abs());
    }
    (
        worst < 1e-12,
        format!("1000 samples, max defect {worst:.2e}"),
    )
}

/// Radius where the cubic remainder `−½ (a·n)(nRn) r³` beats the quartic
/// terms `½ (a·x)²(xRx) − (xRx)²/8 + ½ |g_τi|²` by a factor of twenty.
fn cubic_radius(f: &FermiFrameSample, n: &Vector3<f64>) -> f64 {
    let (a, r) = (f.acceleration.norm(), f.tidal.norm());
    let mixed: f64 = f.mixed.iter().flatten().flatten().map(|v| v * v).sum();
    let c3 = 0.5 * (f.acceleration.dot(n) * (n.transpose() * f.tidal * n)[(0, 0)]).abs();
    let c4 = 0.5 * a * a * r + r * r / 8.0 + 2.0 * mixed / 9.0;
    (0.05 / (1.0 + a + r)).min(0.05 * c3 / c4)
}

fn series_order() -> Check {
    let mut rng = StdRng::seed_from_u64(5);
    let (mut checked, mut skipped) = (0, 0);
    let mut worst = f64::INFINITY;
    while checked < 100 {
        let scale = rng.random_range(0.1..2.0);
        let f = random_frame(&mut rng, scale);
        let n = unit_vector(&mut rng);
        let err = |r: f64| {
            let x = n * r;
            (redshift_exact(&eval_fermi_metric(&f, &x).unwrap()).unwrap() - redshift_series(&f, &x))
                .abs()
        };
        let r = cubic_radius(&f, &n);
        let (e1, e2) = (err(r), err(r / 2.0));
        if e1 < 100.0 * f64::EPSILON {
            skipped += 1;
            continue;
        }
        worst = worst.min(e1 / e2);
        checked += 1;
    }
    (
        worst >= 7.0,
        format!("100 frames ({skipped} at round-off skipped), min drop {worst:.3}x"),
    )
}

fn canonical_structure() -> Check {
    let measures: [fn(f64) -> f64; 3] =
        [|_| 1.0, |x| 1.0 + 0.01 * x * x, |x| 2.0 + (0.3 * x).cos()];
    let mut rng = StdRng::seed_from_u64(4);
    let (mut commutator, mut adjoint): (f64, f64) = (0.0, 0.0);
    for w in measures {
        let g = Grid1D::with_weights(2001, -10.0, 10.0, w).unwrap();
        let ops = build_grid_operators(&g);
        let psi = WaveFunction::from_real_fn(&g, |x| (-x * x / 2.0).exp()).unwrap();
        let xp = ops
            .apply(&ops.position, &ops.apply(&ops.momentum, &psi).unwrap())
            .unwrap();
        let px = ops
            .apply(&ops.momentum, &ops.apply(&ops.position, &psi).unwrap())
            .unwrap();
        let i = Complex64::new(0.0, 1.0);
        let diff: Vec<Complex64> = (0..g.n_points())
            .map(|k| xp.samples()[k] - px.samples()[k] - i * psi.samples()[k])
            .collect();
        let d = WaveFunction::from_samples(&g, diff).unwrap().norm() / psi.norm();
        commutator = commutator.max(d);

        let mut random = || {
            let mut v: Vec<Complex64> = (0..g.n_points())
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            v[0] = Complex64::new(0.0, 0.0);
            v[g.n_points() - 1] = Complex64::new(0.0, 0.0);
            WaveFunction::from_samples(&g, v).unwrap()
        };
        let (a, b) = (random(), random());
        let lhs = inner_product(&a, &ops.apply(&ops.momentum, &b).unwrap()).unwrap();
        let rhs = inner_product(&ops.apply(&ops.momentum, &a).unwrap(), &b).unwrap();
        adjoint = adjoint.max((lhs - rhs).norm() / (a.norm() * b.norm()));
    }
    (
        commutator < 1e-8 && adjoint < 1e-10,
        format!("commutator {commutator:.2e}, self-adjointness {adjoint:.2e}"),
    )
}

fn corrected_oscillator() -> Check {
    let frame = FermiFrameSample::constant_curvature(0.0, 0.19, Vector3::new(0.09, 0.0, 0.0));
    let g = Grid1D::uniform(2001, -10.0, 10.0).unwrap();
    let ops = build_grid_operators(&g);
    let h = assemble_hamiltonian(
        &ops,
        1.0,
        &Potential::Harmonic { omega: 1.0 },
        &frame,
        &Vector3::x(),
        HamiltonianMode::Leading,
    )
    .unwrap();
    let levels = diagonalize(&h, 5).unwrap();
    let worst = levels
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let exact = 1.0 - 0.005 + 0.9 * (k as f64 + 0.5);
            ((p.energy - exact) / exact).abs()
        })
        .fold(0.0, f64::max);
    (
        worst < 1e-5,
        format!("k <= 4, max relative error {worst:.2e}"),
    )
}

fn hydrogen_threshold() -> Check {
    let t = hydrogen_validity(1, 0.0, 0.0).unwrap().threshold;
    let factor = (t / 1e25).max(1e25 / t);
    (
        factor < 3.0,
        format!("threshold {t:.4e} m/s^2, factor {factor:.3} from 1e25"),
    )
}

fn detailed_balance() -> Check {
    let det =
        UDWDetector::new(1.0, 0.01, GaussianSwitching::new(20.0, 0.0).unwrap(), None).unwrap();
    let mut worst: f64 = 0.0;
    let mut all_converged = true;
    for a in [PI, 2.0 * PI, 4.0 * PI] {
        let spec = WightmanSpec::rindler(a, default_epsilon(20.0, a)).unwrap();
        for omega in [0.5, 1.0, 2.0] {
            let db = detailed_balance_ratio(&det, &spec, omega).unwrap();
            all_converged &= db.converged();
            worst = worst.max((db.measured / db.kms - 1.0).abs());
        }
    }
    (
        worst < 0.05 && all_converged,
        format!("9 points, max |measured/kms - 1| = {worst:.2e}, converged {all_converged}"),
    )
}

fn noise_scaling() -> Check {
    let det = UDWDetector::new(
        1.0,
        0.01,
        GaussianSwitching::new(1.0, 0.0).unwrap(),
        Some(OscillatorSpec::new(1.0, 1.0, 1).unwrap()),
    )
    .unwrap();
    let slope = |f: &dyn Fn(f64) -> f64, x0: f64| (f(10.0 * x0) / f(x0)).log10();
    let up = Transition::new(FockState::line(0), FockState::line(1));
    let two = Transition::new(FockState::line(0), FockState::line(2));
    let accel = |a: f64| {
        rel_noise_probability(&det, &TrajectoryModel::uniform_acceleration(a), &up).unwrap()
    };
    let curv = |alpha: f64| {
        rel_noise_probability(
            &det,
            &TrajectoryModel::constant_curvature(alpha, Vector3::zeros()),
            &two,
        )
        .unwrap()
    };
    let (sa, sc) = (slope(&accel, 0.01), slope(&curv, 0.004));
    (
        (sa - 2.0).abs() <= 0.01 && (sc - 2.0).abs() <= 0.01,
        format!("slope in a {sa:.6}, slope in alpha {sc:.6}"),
    )
}

fn determinism() -> Check {
    let config = Path::new(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../configs/benchmark.toml"
    ));
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("run{k}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_worldtube"))
            .arg("sweep")
            .arg("--config")
            .arg(config)
            .arg("--out")
            .arg(&out)
            .status()
            .unwrap();
        if !status.success() {
            return (false, format!("run {k} exited with {status}"));
        }
        outputs.push(std::fs::read(&out).unwrap());
    }
    let same = outputs[0] == outputs[1];
    (
        same,
        format!(
            "benchmark sweep, {} bytes, identical {same}",
            outputs[0].len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check, u64); 9] = [
        ("Rindler Fermi bound", rindler_bound, 1),
        ("volume identity", volume_identity, 1),
        ("series remainder order", series_order, 1),
        ("canonical structure", canonical_structure, 5),
        ("corrected oscillator spectrum", corrected_oscillator, 30),
        ("hydrogen validity threshold", hydrogen_threshold, 1),
        ("Unruh detailed balance", detailed_balance, 120),
        ("noise scaling", noise_scaling, 1),
        ("end-to-end determinism", determinism, 180),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let pass = ok && in_time;
        if !pass {
            failed += 1;
        }
        println!(
            "{} {}. {name}: {detail} ({:.2}s, limit {limit}s)",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64(),
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
