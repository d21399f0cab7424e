//! Dispatch from a resolved config onto the library.

use std::f64::consts::PI;
use std::path::Path;

use nalgebra::{Matrix3, Vector3};
use rayon::prelude::*;
use worldtube::detector::{
    default_epsilon, response_report, FockState, GaussianSwitching, Transition, UDWDetector,
    WightmanSpec, EXCLUDED_TERMS,
};
use worldtube::geometry::{
    fermi_bound_profile, tau_fermi_bound, FermiFrameSample, TrajectoryModel,
};
use worldtube::quantum::{
    assemble_hamiltonian, build_grid_operators_with, diagonalize, hydrogen_validity,
    oscillator_corrected_spectrum, si, unruh_temperature, Grid1D, HamiltonianMode, OscillatorSpec,
    Potential, StencilOrder,
};

use crate::config::{Command, RunConfig, Value};
use crate::error::{CliError, Result};
use crate::table::{Cell, CsvTable};

/// A finished table plus whether every quadrature converged.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub table: CsvTable,
    pub converged: bool,
}

pub fn run(config: &RunConfig) -> Result<Outcome> {
    let mut out = match config.command {
        Command::Sweep => sweep(config)?,
        _ => run_point(config, config.command.name())?,
    };
    out.table.stamp(config);
    Ok(out)
}

fn run_point(config: &RunConfig, context: &str) -> Result<Outcome> {
    match config.command {
        Command::Bound => bound(config, context),
        Command::Spectrum => spectrum(config, context),
        Command::Respond => respond(config, context),
        Command::Validate => validate(config, context),
        Command::Sweep => unreachable!("sweeps expand into their target"),
    }
}

fn invalid(key: &str, reason: impl Into<String>) -> CliError {
    CliError::InvalidValue {
        key: key.into(),
        reason: reason.into(),
    }
}

fn count(config: &RunConfig, key: &str, min: i64) -> Result<usize> {
    let n = config.int(key);
    if n < min {
        return Err(invalid(key, format!("must be at least {min}, got {n}")));
    }
    usize::try_from(n).map_err(|_| invalid(key, "too large"))
}

fn along_x(a: f64) -> Vector3<f64> {
    Vector3::new(a, 0.0, 0.0)
}

fn bound(config: &RunConfig, context: &str) -> Result<Outcome> {
    let (trajectory, taus) = match config.text("trajectory") {
        "tabulated" => {
            for k in ["tau_min", "tau_max", "tau_samples"] {
                if config.params.contains_key(k) {
                    return Err(invalid(
                        k,
                        "tabulated trajectories are sampled at their frame times",
                    ));
                }
            }
            let path = match config.params.get("frames") {
                Some(Value::Text(p)) => p.clone(),
                _ => return Err(CliError::MissingKey("frames".into())),
            };
            let resolved = match &config.base_dir {
                Some(dir) => dir.join(&path),
                None => path.into(),
            };
            let traj = TrajectoryModel::tabulated(read_frames(&resolved)?)
                .map_err(CliError::domain(context))?;
            let taus = traj.sample_times().unwrap_or_default();
            (traj, taus)
        }
        _ => {
            if config.params.contains_key("frames") {
                return Err(invalid(
                    "frames",
                    "only used when trajectory = \"tabulated\"",
                ));
            }
            let lo = config.opt_float("tau_min").unwrap_or(0.0);
            let hi = config.opt_float("tau_max").unwrap_or(1.0);
            if !(lo.is_finite() && hi.is_finite() && hi >= lo) {
                return Err(invalid(
                    "tau_max",
                    format!("need tau_min <= tau_max, got [{lo}, {hi}]"),
                ));
            }
            let n = match config.params.get("tau_samples") {
                Some(_) => count(config, "tau_samples", 1)?,
                None => 11,
            };
            let taus = (0..n)
                .map(|k| {
                    if n == 1 {
                        lo
                    } else {
                        lo + (hi - lo) * k as f64 / (n - 1) as f64
                    }
                })
                .collect::<Vec<_>>();
            let traj = TrajectoryModel::constant_curvature(
                config.float("alpha"),
                along_x(config.float("a")),
            );
            (traj, taus)
        }
    };

    let profile = fermi_bound_profile(&trajectory, &taus).map_err(CliError::domain(context))?;
    let mut table = CsvTable::new(&["kind", "tau", "a", "lambda_r", "ell"]);
    let row = |kind: &str, r: &worldtube::geometry::TauBound| {
        vec![
            Cell::Label(kind.into()),
            Cell::Num(r.tau),
            Cell::Num(r.acceleration),
            Cell::Num(r.lambda_r),
            Cell::Num(r.bound.as_f64()),
        ]
    };
    for r in &profile {
        table.push(row("sample", r));
    }
    // First sample attaining the infimum.
    let inf = profile.iter().fold(&profile[0], |best, r| {
        if r.bound.as_f64() < best.bound.as_f64() {
            r
        } else {
            best
        }
    });
    table.push(row("infimum", inf));
    table.note("infimum taken over the listed samples only, without interpolation");
    Ok(Outcome {
        table,
        converged: true,
    })
}

fn read_frames(path: &Path) -> Result<Vec<FermiFrameSample>> {
    let io = |e: &dyn std::fmt::Display| CliError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    };
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| io(&e))?;
    const COLUMNS: [&str; 10] = [
        "tau", "a1", "a2", "a3", "r11", "r12", "r13", "r22", "r23", "r33",
    ];
    let headers = reader.headers().map_err(|e| io(&e))?.clone();
    let index = COLUMNS
        .iter()
        .map(|c| {
            headers
                .iter()
                .position(|h| h == *c)
                .ok_or_else(|| io(&format!("missing column `{c}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut frames = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| io(&e))?;
        let v = index
            .iter()
            .map(|&i| {
                record
                    .get(i)
                    .and_then(|s| s.parse::<f64>().ok())
                    .ok_or_else(|| {
                        io(&format!(
                            "row {}: column {} is not a number",
                            line + 1,
                            headers[i].to_string()
                        ))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        let tidal = Matrix3::new(v[4], v[5], v[6], v[5], v[7], v[8], v[6], v[8], v[9]);
        let frame = FermiFrameSample::new(
            v[0],
            Vector3::new(v[1], v[2], v[3]),
            tidal,
            Default::default(),
            Default::default(),
        )
        .map_err(CliError::domain(format!(
            "{} row {}",
            path.display(),
            line + 1
        )))?;
        frames.push(frame);
    }
    Ok(frames)
}

fn spectrum(config: &RunConfig, context: &str) -> Result<Outcome> {
    let (m, omega, alpha, a) = (
        config.float("m"),
        config.float("omega"),
        config.float("alpha"),
        config.float("a"),
    );
    let n_points = count(config, "n_points", Grid1D::MIN_POINTS as i64)?;
    let levels = count(config, "levels", 1)?;
    let order = u32::try_from(config.int("stencil_order"))
        .ok()
        .and_then(StencilOrder::from_order)
        .ok_or_else(|| invalid("stencil_order", "must be 2, 4, 6 or 8"))?;
    let mode = match config.text("mode") {
        "bare" => HamiltonianMode::Bare,
        "symmetrized" => HamiltonianMode::Symmetrized,
        _ => HamiltonianMode::Leading,
    };
    let frame = FermiFrameSample::constant_curvature(0.0, alpha, along_x(a));
    let axis = Vector3::x();
    let (lo, hi) = (config.float("x_min"), config.float("x_max"));
    let grid = match config.text("measure") {
        "metric" => Grid1D::along_axis(n_points, lo, hi, &frame, &axis),
        _ => Grid1D::uniform(n_points, lo, hi),
    };
    let grid = grid.map_err(CliError::domain(context))?;
    let ops = build_grid_operators_with(&grid, order);
    let spec = OscillatorSpec::new(m, omega, 1).map_err(CliError::domain(context))?;
    let h = assemble_hamiltonian(&ops, m, &Potential::Harmonic { omega }, &frame, &axis, mode)
        .map_err(CliError::domain(context))?;
    let pairs = diagonalize(&h, levels).map_err(CliError::domain(context))?;

    let analytic = match mode {
        HamiltonianMode::Bare => oscillator_corrected_spectrum(&spec, 0.0, &Vector3::zeros()),
        _ => oscillator_corrected_spectrum(&spec, alpha, &along_x(a)),
    };
    let mut table = CsvTable::new(&["k", "e_numeric", "e_analytic", "abs_diff"]);
    for (k, pair) in pairs.iter().enumerate() {
        let exact = analytic.level(k as u32);
        table.push(vec![
            Cell::Int(k as i64),
            Cell::Num(pair.energy),
            Cell::Num(exact),
            Cell::Num((pair.energy - exact).abs()),
        ]);
    }
    if !analytic.valid {
        table.note("omega^2 <= alpha: no bound states, analytic levels undefined");
    }
    Ok(Outcome {
        table,
        converged: true,
    })
}

fn respond(config: &RunConfig, context: &str) -> Result<Outcome> {
    let omega = config.float("omega");
    let a = config.float("a");
    let t = config.float("switching_width");
    if !(a.is_finite() && a >= 0.0) {
        return Err(invalid("a", format!("must be non-negative, got {a}")));
    }
    let domain = || CliError::domain(context);
    let switching = GaussianSwitching::new(t, config.float("tau0")).map_err(domain())?;
    let epsilon = config
        .opt_float("epsilon")
        .unwrap_or_else(|| default_epsilon(t, a));
    let spec = if a > 0.0 {
        WightmanSpec::rindler(a, epsilon)
    } else {
        WightmanSpec::inertial(epsilon)
    }
    .map_err(domain())?;
    let internal = match config.opt_float("osc_m") {
        Some(m) => Some(OscillatorSpec::new(m, config.float("osc_omega"), 1).map_err(domain())?),
        None => None,
    };
    let level = |key: &str| {
        u32::try_from(config.int(key)).map_err(|_| invalid(key, "must be a non-negative level"))
    };
    let (from, to) = (level("transition_from")?, level("transition_to")?);
    let det =
        UDWDetector::new(omega, config.float("coupling"), switching, internal).map_err(domain())?;
    let trajectory = TrajectoryModel::constant_curvature(config.float("alpha"), along_x(a));
    let threshold = config.float("noise_threshold");

    let up = Transition::new(FockState::line(from), FockState::line(to));
    let down = Transition::new(FockState::line(to), FockState::line(from));
    let reports = [(omega, up), (-omega, down)]
        .iter()
        .map(|(gap, tr)| {
            response_report(
                &det.with_gap(*gap),
                &spec,
                &trajectory,
                internal.map(|_| tr),
                threshold,
            )
            .map_err(domain())
        })
        .collect::<Result<Vec<_>>>()?;

    let balance = reports[0].p_field / reports[1].p_field;
    let kms = if a > 0.0 {
        Cell::Num((-2.0 * PI * omega / a).exp())
    } else {
        Cell::Undefined
    };
    let mut table = CsvTable::new(&[
        "omega",
        "p_field",
        "p_rel",
        "noise_ratio",
        "balance_ratio",
        "kms_ratio",
        "error",
        "converged",
        "probe_valid",
    ]);
    for (gap, r) in [omega, -omega].into_iter().zip(&reports) {
        table.push(vec![
            Cell::Num(gap),
            Cell::Num(r.p_field),
            Cell::Num(r.p_rel),
            Cell::opt(r.noise_ratio),
            Cell::Num(balance),
            kms.clone(),
            Cell::Num(r.quadrature_error_estimate),
            Cell::Bool(r.converged),
            r.probe_valid.map_or(Cell::Undefined, Cell::Bool),
        ]);
    }
    table.note(format!("epsilon: {epsilon:?}"));
    table.note(EXCLUDED_TERMS);
    Ok(Outcome {
        table,
        converged: reports.iter().all(|r| r.converged),
    })
}

fn validate(config: &RunConfig, context: &str) -> Result<Outcome> {
    let (m, omega, alpha, a) = (
        config.float("m"),
        config.float("omega"),
        config.float("alpha"),
        config.float("a"),
    );
    let domain = || CliError::domain(context);
    let level =
        u32::try_from(config.int("level")).map_err(|_| invalid("level", "must be non-negative"))?;
    let n = u32::try_from(config.int("hydrogen_n"))
        .map_err(|_| invalid("hydrogen_n", "must be positive"))?;
    let threshold = config.float("energy_threshold");

    let spec = OscillatorSpec::new(m, omega, 1).map_err(domain())?;
    let frame = FermiFrameSample::constant_curvature(0.0, alpha, along_x(a));
    let corrected = oscillator_corrected_spectrum(&spec, alpha, &along_x(a));
    let ell = tau_fermi_bound(&frame).map_err(domain())?;

    // The trap is recentred and softened by the geometry: measure the extent of
    // the corrected level from the worldline.
    let localization = if corrected.valid {
        let trap = OscillatorSpec::new(m, corrected.omega_prime, 1).map_err(domain())?;
        trap.localization(level) + corrected.displacement.norm()
    } else {
        f64::INFINITY
    };
    let energy_ratio = (corrected.level(level) - m) / m;

    let hydrogen =
        hydrogen_validity(n, config.float("a_si"), config.float("lambda_r_si")).map_err(domain())?;
    let rate =
        config.float("a_si") + si::SPEED_OF_LIGHT.powi(2) * config.float("lambda_r_si").sqrt();
    let t_probe = unruh_temperature(config.float("a_si"));
    let t_max = unruh_temperature(hydrogen.threshold);

    let mut table = CsvTable::new(&["criterion", "value", "bound", "pass"]);
    let mut row = |name: &str, value: f64, bound: f64, pass: bool| {
        table.push(vec![
            Cell::Label(name.into()),
            Cell::Num(value),
            Cell::Num(bound),
            Cell::Bool(pass),
        ]);
    };
    row(
        "localization",
        localization,
        ell.as_f64(),
        ell.exceeds(localization),
    );
    row(
        "nonrelativistic",
        energy_ratio,
        threshold,
        energy_ratio < threshold,
    );
    row("trapping", omega * omega - alpha, 0.0, corrected.valid);
    row("hydrogen", rate, hydrogen.threshold, hydrogen.valid);
    row("unruh_temperature", t_probe, t_max, t_probe < t_max);
    table.note("hydrogen and unruh_temperature rows are SI (m/s^2, K); the rest are natural units");
    Ok(Outcome {
        table,
        converged: true,
    })
}

fn sweep(config: &RunConfig) -> Result<Outcome> {
    let keys: Vec<&String> = config.sweep.keys().collect();
    let points = config.expand();
    let results: Vec<Result<Outcome>> = points
        .par_iter()
        .map(|p| {
            let context = keys
                .iter()
                .map(|k| format!("{k}={}", p.params[*k]))
                .collect::<Vec<_>>()
                .join(", ");
            run_point(p, &format!("{} at {context}", p.command))
        })
        .collect();

    // Swept columns are prefixed so they cannot collide with the target's own.
    let mut header: Vec<String> = keys.iter().map(|k| format!("sweep_{k}")).collect();
    let mut table: Option<CsvTable> = None;
    let mut converged = true;
    for (point, result) in points.iter().zip(results) {
        let out = result?;
        converged &= out.converged;
        let t = table.get_or_insert_with(|| {
            header.extend(out.table.header.iter().cloned());
            let mut t = CsvTable::new(&header.iter().map(String::as_str).collect::<Vec<_>>());
            t.provenance = out.table.provenance.clone();
            t
        });
        // Only notes shared by every point describe the whole table.
        t.provenance
            .retain(|line| out.table.provenance.contains(line));
        let prefix: Vec<Cell> = keys
            .iter()
            .map(|k| match &point.params[*k] {
                Value::Float(v) => Cell::Num(*v),
                Value::Int(v) => Cell::Int(*v),
                Value::Text(s) => Cell::Label(s.clone()),
            })
            .collect();
        for row in out.table.rows {
            t.push(prefix.iter().cloned().chain(row).collect());
        }
    }
    let table = table.expect("a sweep has at least one point");
    Ok(Outcome { table, converged })
}
