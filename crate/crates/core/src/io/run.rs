// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Subcommand orchestration: one config in, CSV tables and a manifest out.
//!
//! | subcommand          | files                                                         |
//! |---------------------|---------------------------------------------------------------|
//! | `darkstates`        | darkstates.csv                                                |
//! | `slowlight`         | slowlight.csv, slowfit.csv                                    |
//! | `store`             | trace_in.csv, trace_out.csv, spinwave.csv, beatfit.csv, polariton.csv |
//! | `scan-transmission` | transmission.csv, crosscheck.csv                              |
//! | `sweep-field`       | sweep.csv, linfit.csv                                         |
//! | `fit-beat`          | beatfit.csv                                                   |
//!
//! Intensities are |Ω|² in rad²/μs²; polariton norms are ∫|Ψ|²dz in
//! rad²·mm/μs². Metadata lines never enter the body checksums recorded in
//! the manifest.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::config::RunConfig;
use super::table::{num, Table};
use crate::analysis::{fit_beat, BeatFitResult};
use crate::atom::{dark_states, DriveConfig};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::propagation::Which;
use crate::protocol::{
    eit_width, fit_sweep, linspace, run_storage, scan_transmission, slow_light_sweep, sweep_field, ScanOptions,
    SlowLightOptions, StorageOptions, SweepSetup,
};
use crate::units::{delta_m2_beat_mhz, mhz_to_angular};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subcommand {
    DarkStates,
    SlowLight,
    Store,
    ScanTransmission,
    SweepField,
    FitBeat,
}

impl Subcommand {
    pub const ALL: [Subcommand; 6] = [
        Subcommand::DarkStates,
        Subcommand::SlowLight,
        Subcommand::Store,
        Subcommand::ScanTransmission,
        Subcommand::SweepField,
        Subcommand::FitBeat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::DarkStates => "darkstates",
            Subcommand::SlowLight => "slowlight",
            Subcommand::Store => "store",
            Subcommand::ScanTransmission => "scan-transmission",
            Subcommand::SweepField => "sweep-field",
            Subcommand::FitBeat => "fit-beat",
        }
    }
}

impl fmt::Display for Subcommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Subcommand {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Subcommand::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown subcommand '{s}'")))
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunOptions {
    pub seed: u64,
    /// Worker threads recorded in the manifest; the caller sets up the pool.
    pub threads: Option<usize>,
    pub execution: Execution,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunSummary {
    /// (file name, SHA-256 of the CSV body)
    pub files: Vec<(String, String)>,
    /// One-line results for the terminal.
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
}

struct Output<'a> {
    dir: &'a Path,
    summary: RunSummary,
}

impl Output<'_> {
    fn write(&mut self, name: &str, table: &Table) -> Result<()> {
        let hash = table.write(&self.dir.join(name))?;
        self.summary.files.push((name.to_string(), hash));
        Ok(())
    }

    fn note(&mut self, s: String) {
        self.summary.notes.push(s);
    }
}

/// Runs one subcommand, writing its tables and a `manifest` into `out_dir`.
///
/// Tables are written before a fit failure is reported, so `store` and
/// `fit-beat` leave a `beatfit.csv` with the failure in its status column.
pub fn run(sub: Subcommand, cfg: &RunConfig, out_dir: &Path, opts: &RunOptions) -> Result<RunSummary> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir.display().to_string(), e))?;
    let started = Instant::now();
    let mut out = Output { dir: out_dir, summary: RunSummary::default() };
    let res = match sub {
        Subcommand::DarkStates => darkstates(cfg, &mut out),
        Subcommand::SlowLight => slowlight(cfg, opts, &mut out),
        Subcommand::Store => store(cfg, opts, &mut out),
        Subcommand::ScanTransmission => scan(cfg, opts, &mut out),
        Subcommand::SweepField => sweep(cfg, opts, &mut out),
        Subcommand::FitBeat => fit_trace(cfg, opts, &mut out),
    };
    write_manifest(sub, cfg, opts, &out, started.elapsed().as_secs_f64(), res.as_ref().err())?;
    res.map(|_| out.summary)
}

fn write_manifest(
    sub: Subcommand,
    cfg: &RunConfig,
    opts: &RunOptions,
    out: &Output<'_>,
    wall: f64,
    err: Option<&Error>,
) -> Result<()> {
    let mut m = String::new();
    m.push_str(&format!("subcommand = {sub}\n"));
    m.push_str(&format!("version = {}\n", env!("CARGO_PKG_VERSION")));
    m.push_str(&format!("seed = {}\n", opts.seed));
    m.push_str(&format!(
        "threads = {}\n",
        opts.threads.map_or("default".to_string(), |n| n.to_string())
    ));
    m.push_str(&format!("execution = {:?}\n", opts.execution));
    m.push_str(&format!("wall_time_s = {wall:.3}\n"));
    m.push_str(&format!(
        "status = {}\n",
        err.map_or("ok".to_string(), |e| format!("error: {e}"))
    ));
    for (name, hash) in &out.summary.files {
        m.push_str(&format!("sha256 {name} = {hash}\n"));
    }
    m.push_str("\n# resolved configuration\n");
    m.push_str(&cfg.serialize());
    let path = out.dir.join("manifest");
    fs::write(&path, m).map_err(|e| Error::io(path.display().to_string(), e))
}

fn common_meta(t: &mut Table, cfg: &RunConfig) {
    t.meta("preset", cfg.preset)
        .meta("variant", cfg.scheme.variant)
        .meta("optical_depth", num(cfg.medium.optical_depth))
        .meta("length_mm", num(cfg.medium.length))
        .meta("omega_c_rad_per_us", num(cfg.drive.omega_c))
        .meta("B_G", num(cfg.drive.b_field));
}

fn darkstates(cfg: &RunConfig, out: &mut Output<'_>) -> Result<()> {
    let scheme = cfg.level_scheme()?;
    let drive = cfg.drive_config();
    let s = &cfg.schedule;
    let a = Complex64::new(s.amplitude * s.alpha, 0.0);
    let b = Complex64::from_polar(s.amplitude * s.beta, s.phase);
    let dark = dark_states(&scheme, &drive, (a, b))?;
    let mut t = Table::new(&["dark_index", "level", "m", "re", "im", "population"]);
    common_meta(&mut t, cfg);
    t.meta("dimension", dark.dimension()).meta("driven_dimension", dark.driven_dimension);
    for (k, v) in dark.basis.iter().enumerate() {
        for (i, c) in v.iter().enumerate() {
            if c.norm_sqr() == 0.0 {
                continue;
            }
            let lvl = &scheme.states[i];
            t.push(vec![k.to_string(), lvl.label.clone(), lvl.m.to_string(), num(c.re), num(c.im), num(c.norm_sqr())]);
        }
    }
    out.write("darkstates.csv", &t)?;
    out.note(format!(
        "{} dark states ({} on driven ground states)",
        dark.dimension(),
        dark.driven_dimension
    ));
    Ok(())
}

fn slowlight(cfg: &RunConfig, opts: &RunOptions, out: &mut Output<'_>) -> Result<()> {
    let scheme = cfg.level_scheme()?;
    let medium = cfg.medium_params();
    let so = SlowLightOptions { sigma: cfg.sweep.slow_sigma, nz: cfg.sweep.slow_nz, execution: opts.execution };
    let res = slow_light_sweep(
        &scheme,
        &medium,
        &cfg.drive_config(),
        cfg.medium.length,
        &cfg.sweep.omega_c_values,
        &so,
    )?;
    let mut t = Table::new(&["omega_c_rad_per_us", "delay_us", "predicted_us", "rel_error", "transmission"]);
    common_meta(&mut t, cfg);
    t.meta("sigma_us", num(cfg.sweep.slow_sigma)).meta("nz", cfg.sweep.slow_nz);
    for p in &res.points {
        t.push(vec![num(p.omega_c), num(p.delay), num(p.predicted), num(p.rel_error), num(p.transmission)]);
    }
    out.write("slowlight.csv", &t)?;

    let f = &res.fit;
    let mut t = Table::new(&[
        "slope_us3",
        "slope_err_us3",
        "intercept_us",
        "intercept_err_us",
        "r_squared",
        "tripod_slope_us3",
        "lambda_slope_us3",
        "sigmas_from_tripod",
        "sigmas_from_lambda",
    ]);
    common_meta(&mut t, cfg);
    t.push(vec![
        num(f.slope),
        num(f.slope_err),
        num(f.intercept),
        num(f.intercept_err),
        num(f.r_squared),
        num(res.tripod_slope),
        num(res.lambda_slope),
        num(res.sigmas_from(res.tripod_slope)),
        num(res.sigmas_from(res.lambda_slope)),
    ]);
    out.write("slowfit.csv", &t)?;
    out.note(format!(
        "delay slope {:.6} +- {:.2e} us^3 (tripod {:.6}, single lambda {:.6}); max |rel error| {:.2e}",
        f.slope,
        f.slope_err,
        res.tripod_slope,
        res.lambda_slope,
        res.max_rel_error()
    ));
    Ok(())
}

/// Gaussian photodiode noise with rms `level`·max(y).
fn add_noise(y: &[f64], level: f64, seed: u64) -> Vec<f64> {
    let peak = y.iter().copied().fold(0.0, f64::max);
    let sd = level * peak;
    if !(sd > 0.0) {
        return y.to_vec();
    }
    let normal = Normal::new(0.0, sd).expect("finite sd");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    y.iter().map(|v| v + normal.sample(&mut rng)).collect()
}

const BEATFIT_HEADER: [&str; 17] = [
    "status",
    "f_beat_MHz",
    "f_err_MHz",
    "expected_MHz",
    "phase_rad",
    "phase_err_rad",
    "visibility",
    "visibility_err",
    "tau_us",
    "tau_err_us",
    "offset_rad2_per_us2",
    "amplitude_rad2_per_us2",
    "residual_rms_rad2_per_us2",
    "iterations",
    "t0_us",
    "t1_us",
    "efficiency",
];

fn beatfit_row(fit: &Result<BeatFitResult>, expected: f64, window: (f64, f64), efficiency: f64) -> Vec<String> {
    match fit {
        Ok(f) => vec![
            "ok".into(),
            num(f.f),
            num(f.f_err),
            num(expected),
            num(f.phase),
            num(f.phase_err),
            num(f.visibility),
            num(f.visibility_err),
            num(f.tau),
            num(f.tau_err),
            num(f.offset),
            num(f.amplitude),
            num(f.residual_rms),
            f.iterations.to_string(),
            num(f.window.0),
            num(f.window.1),
            num(efficiency),
        ],
        Err(e) => {
            let mut row = vec![String::new(); BEATFIT_HEADER.len()];
            row[0] = format!("error: {e}");
            row[3] = num(expected);
            row[14] = num(window.0);
            row[15] = num(window.1);
            row[16] = num(efficiency);
            row
        }
    }
}

fn store(cfg: &RunConfig, opts: &RunOptions, out: &mut Output<'_>) -> Result<()> {
    let scheme = cfg.level_scheme()?;
    let medium = cfg.medium_params();
    let drive = cfg.drive_config();
    let grid = cfg.storage_grid()?;
    let sched = cfg.storage_schedule();
    let so = StorageOptions { execution: opts.execution, ..Default::default() };
    let r = run_storage(&scheme, &medium, &drive, &sched, &grid, cfg.spinor(), &so)?;
    out.summary.warnings.extend(r.warnings.iter().cloned());
    let stride = cfg.output.trace_stride;
    let expected = delta_m2_beat_mhz(drive.g_factor, drive.b_field);

    let mut meta = Table::default();
    common_meta(&mut meta, cfg);
    meta.meta("t_off_us", num(r.block.t_off))
        .meta("t_on_us", num(r.block.t_on()))
        .meta("read_start_us", num(r.block.read_start()))
        .meta("dt_us", num(grid.dt()))
        .meta("nz", grid.nz);

    let mut t = Table::new(&[
        "t_us",
        "omega_c_rad_per_us",
        "I_s1_rad2_per_us2",
        "I_s2_rad2_per_us2",
        "I_detected_rad2_per_us2",
    ]);
    t.meta = meta.meta.clone();
    let (i1, i2, it) = (r.input(Which::S1), r.input(Which::S2), r.input(Which::Total));
    for k in (0..r.times().len()).step_by(stride) {
        t.push(vec![num(r.times()[k]), num(r.record.control[k].re), num(i1[k]), num(i2[k]), num(it[k])]);
    }
    out.write("trace_in.csv", &t)?;

    let (o1, o2, ot) = (r.output(Which::S1), r.output(Which::S2), r.output(Which::Total));
    let noisy = (cfg.output.detector_noise > 0.0).then(|| add_noise(&ot, cfg.output.detector_noise, opts.seed));
    let mut header = vec!["t_us", "I_s1_rad2_per_us2", "I_s2_rad2_per_us2", "I_detected_rad2_per_us2"];
    if noisy.is_some() {
        header.push("I_noisy_rad2_per_us2");
    }
    let mut t = Table::new(&header);
    t.meta = meta.meta.clone();
    t.meta("window_t0_us", num(r.window.0)).meta("window_t1_us", num(r.window.1));
    t.meta("detector_noise", num(cfg.output.detector_noise));
    for k in (0..r.times().len()).step_by(stride) {
        let mut row = vec![num(r.times()[k]), num(o1[k]), num(o2[k]), num(ot[k])];
        if let Some(n) = &noisy {
            row.push(num(n[k]));
        }
        t.push(row);
    }
    out.write("trace_out.csv", &t)?;

    let mut t = Table::new(&["z_mm", "rho1_re", "rho1_im", "rho2_re", "rho2_im"]);
    t.meta = meta.meta.clone();
    t.meta("snapshot_t_us", num(r.spin_wave.t));
    let sw = &r.spin_wave;
    for (i, z) in sw.z.iter().enumerate() {
        let (a, b) = (sw.coherence[0][i], sw.coherence[1][i]);
        t.push(vec![num(*z), num(a.re), num(a.im), num(b.re), num(b.im)]);
    }
    out.write("spinwave.csv", &t)?;

    let mut t = Table::new(&[
        "t_us",
        "theta_rad",
        "norm_rad2_mm_per_us2",
        "bright_norm_rad2_mm_per_us2",
        "photonic_fraction",
    ]);
    t.meta = meta.meta.clone();
    for p in &r.polariton {
        t.push(vec![num(p.t), num(p.theta), num(p.norm), num(p.bright_norm), num(p.photonic_fraction)]);
    }
    out.write("polariton.csv", &t)?;

    let fit = match &noisy {
        Some(n) => fit_beat(r.times(), n, r.window),
        None => r.fit_beat(),
    };
    let mut t = Table::new(&BEATFIT_HEADER);
    t.meta = meta.meta.clone();
    t.meta("leaked", num(r.leaked)).meta("stored_efficiency", num(r.stored_efficiency));
    if let Some(d) = r.dark_field {
        t.meta("dark_field", num(d));
    }
    t.push(beatfit_row(&fit, expected, r.window, r.efficiency));
    out.write("beatfit.csv", &t)?;

    out.note(format!(
        "efficiency {:.4} (leaked {:.4}, stored {:.4})",
        r.efficiency, r.leaked, r.stored_efficiency
    ));
    let f = fit?;
    out.note(format!(
        "beat {:.6} +- {:.1e} MHz (2Z = {:.6} MHz), visibility {:.3}",
        f.f, f.f_err, expected, f.visibility
    ));
    Ok(())
}

fn scan(cfg: &RunConfig, opts: &RunOptions, out: &mut Output<'_>) -> Result<()> {
    let scheme = cfg.level_scheme()?;
    let medium = cfg.medium_params();
    let mut drive = cfg.drive_config();
    drive.delta1 = 0.0;
    drive.delta2 = 0.0;
    let l = cfg.medium.length;
    let guess = 2.0 * drive.omega_c * drive.omega_c / cfg.scheme.gamma;
    let width = eit_width(&scheme, &medium, &drive, l, guess.max(1e-3), 401)?;
    let span = cfg.sweep.scan_span.unwrap_or(2.0 * width);
    let axis = linspace(-span, span, cfg.sweep.scan_n);
    let so = ScanOptions { execution: opts.execution, cross_checks: cfg.sweep.cross_checks, ..Default::default() };
    let map = scan_transmission(&scheme, &medium, &drive, l, &axis, &axis, &so)?;

    let mut t = Table::new(&["delta1_rad_per_us", "delta2_rad_per_us", "transmission"]);
    common_meta(&mut t, cfg);
    t.meta("eit_width_rad_per_us", num(width)).meta("missing", map.missing());
    for (i, d1) in map.delta1.iter().enumerate() {
        for (j, d2) in map.delta2.iter().enumerate() {
            t.push(vec![num(*d1), num(*d2), map.get(i, j).map_or(String::new(), num)]);
        }
    }
    out.write("transmission.csv", &t)?;

    let mut t = Table::new(&["delta1_rad_per_us", "delta2_rad_per_us", "steady", "propagated"]);
    common_meta(&mut t, cfg);
    for c in &map.cross_checks {
        t.push(vec![num(c.delta1), num(c.delta2), num(c.steady), num(c.propagated)]);
    }
    out.write("crosscheck.csv", &t)?;
    let worst = map
        .cross_checks
        .iter()
        .map(|c| (c.steady - c.propagated).abs())
        .fold(0.0, f64::max);
    out.note(format!(
        "EIT width {width:.4} rad/us; {} missing points; max steady/propagated difference {worst:.2e}",
        map.missing()
    ));
    Ok(())
}

fn sweep(cfg: &RunConfig, opts: &RunOptions, out: &mut Output<'_>) -> Result<()> {
    let scheme = cfg.level_scheme()?;
    let medium = cfg.medium_params();
    let base = DriveConfig { delta1: 0.0, delta2: 0.0, ..cfg.drive_config() };
    let difference = mhz_to_angular(cfg.sweep.difference_mhz);
    // Resolve the largest Zeeman shift of the sweep.
    let b_max = cfg.sweep.b_values.iter().fold(0.0f64, |m, b| m.max(b.abs()));
    let worst = DriveConfig { b_field: b_max, ..base.clone() }.with_symmetric_signals(difference);
    let grid = cfg.storage_grid_for(&worst)?;
    let sched = cfg.storage_schedule();
    let guess = 2.0 * base.omega_c * base.omega_c / cfg.scheme.gamma;
    let width = eit_width(&scheme, &medium, &base, cfg.medium.length, guess.max(1e-3), 401).ok();
    let setup = SweepSetup {
        scheme: &scheme,
        medium: &medium,
        drive: &base,
        schedule: &sched,
        grid: &grid,
        spinor: cfg.spinor(),
        eit_width: width,
        execution: opts.execution,
    };
    let points = sweep_field(&setup, &cfg.sweep.b_values, difference);

    let mut header = vec!["B_G", "delta1_rad_per_us", "delta2_rad_per_us", "input_difference_MHz", "in_window"];
    header.extend(BEATFIT_HEADER);
    let mut t = Table::new(&header);
    common_meta(&mut t, cfg);
    t.meta("difference_MHz", num(cfg.sweep.difference_mhz));
    if let Some(w) = width {
        t.meta("eit_width_rad_per_us", num(w));
    }
    for p in &points {
        let mut row = vec![
            num(p.b),
            num(p.delta1),
            num(p.delta2),
            num(p.input_difference_mhz),
            p.in_window.to_string(),
        ];
        row.extend(beatfit_row(&p.fit, p.expected_mhz, (f64::NAN, f64::NAN), p.efficiency));
        t.push(row);
    }
    out.write("sweep.csv", &t)?;

    let fit = fit_sweep(&points);
    let expected = delta_m2_beat_mhz(base.g_factor, 1.0);
    let mut t = Table::new(&[
        "status",
        "slope_MHz_per_G",
        "slope_err_MHz_per_G",
        "intercept_MHz",
        "intercept_err_MHz",
        "r_squared",
        "chi_squared",
        "expected_slope_MHz_per_G",
    ]);
    common_meta(&mut t, cfg);
    t.push(match &fit {
        Ok(f) => vec![
            "ok".into(),
            num(f.slope),
            num(f.slope_err),
            num(f.intercept),
            num(f.intercept_err),
            num(f.r_squared),
            num(f.chi_squared),
            num(expected),
        ],
        Err(e) => {
            let mut row = vec![String::new(); 8];
            row[0] = format!("error: {e}");
            row[7] = num(expected);
            row
        }
    });
    out.write("linfit.csv", &t)?;
    let f = fit?;
    out.note(format!(
        "beat slope {:.6} +- {:.1e} MHz/G (2 g_F mu_B = {:.6}); {} of {} points fitted",
        f.slope,
        f.slope_err,
        expected,
        points.iter().filter(|p| p.fit.is_ok()).count(),
        points.len()
    ));
    Ok(())
}

/// Reads `t_us` and the photodiode column from a trace file.
///
/// The intensity column is `I_noisy_rad2_per_us2`, else
/// `I_detected_rad2_per_us2`, else the second column. The fit window is
/// `fit_t0`/`fit_t1`, else the file's `window_t0_us`/`window_t1_us`
/// metadata, else the whole trace.
fn fit_trace(cfg: &RunConfig, opts: &RunOptions, out: &mut Output<'_>) -> Result<()> {
    let path = cfg
        .output
        .trace
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("fit-beat needs a trace file ([output] trace or --trace)".into()))?;
    let table = Table::read(&PathBuf::from(path))?;
    let tc = table
        .column("t_us")
        .ok_or_else(|| Error::InvalidInput(format!("{path}: no t_us column")))?;
    let ic = ["I_noisy_rad2_per_us2", "I_detected_rad2_per_us2"]
        .iter()
        .find_map(|c| table.column(c))
        .or((table.header.len() >= 2).then_some(if tc == 0 { 1 } else { 0 }))
        .ok_or_else(|| Error::InvalidInput(format!("{path}: no intensity column")))?;
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| Error::InvalidInput(format!("{path}: '{s}' is not a number")))
    };
    let mut times = Vec::with_capacity(table.rows.len());
    let mut y = Vec::with_capacity(table.rows.len());
    for row in &table.rows {
        times.push(parse(&row[tc])?);
        y.push(parse(&row[ic])?);
    }
    if times.len() < 2 {
        return Err(Error::InvalidInput(format!("{path}: trace has fewer than 2 samples")));
    }
    let meta_f = |k: &str| table.meta_value(k).and_then(|v| v.parse::<f64>().ok());
    let t0 = cfg.output.fit_t0.or(meta_f("window_t0_us")).unwrap_or(times[0]);
    let t1 = cfg.output.fit_t1.or(meta_f("window_t1_us")).unwrap_or(times[times.len() - 1]);
    let y = if cfg.output.detector_noise > 0.0 {
        add_noise(&y, cfg.output.detector_noise, opts.seed)
    } else {
        y
    };
    let fit = fit_beat(&times, &y, (t0, t1));
    let expected = meta_f("B_G").map_or(f64::NAN, |b| delta_m2_beat_mhz(cfg.drive.g_factor, b));
    let mut t = Table::new(&BEATFIT_HEADER);
    t.meta("trace", path).meta("column", &table.header[ic]);
    t.push(beatfit_row(&fit, expected, (t0, t1), f64::NAN));
    out.write("beatfit.csv", &t)?;
    let f = fit?;
    out.note(format!(
        "beat {:.6} +- {:.1e} MHz, visibility {:.3} +- {:.1e}, tau {:.3} us",
        f.f, f.f_err, f.visibility, f.visibility_err, f.tau
    ));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subcommand_names_round_trip() {
        for s in Subcommand::ALL {
            assert_eq!(s.name().parse::<Subcommand>().unwrap(), s);
        }
        assert!("stor".parse::<Subcommand>().is_err());
    }

    #[test]
    fn noise_is_seeded() {
        let y = vec![1.0; 100];
        assert_eq!(add_noise(&y, 0.01, 3), add_noise(&y, 0.01, 3));
        assert_ne!(add_noise(&y, 0.01, 3), add_noise(&y, 0.01, 4));
        assert_eq!(add_noise(&y, 0.0, 3), y);
    }
}
