// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! INI-style run configuration.
//!
//! ```text
//! preset = desk          # optional, before any section; default paper
//! [medium]
//! optical_depth = 40     # comments start with '#' or ';'
//! ```
//!
//! Keys not given take the preset's value. Unknown sections or keys, syntax
//! errors and out-of-range values are reported with their line number.

use std::fmt;
use std::str::FromStr;

use crate::atom::{build_scheme, DriveConfig, LevelScheme, Variant};
use crate::error::{Error, Result};
use crate::propagation::{step_rate, Grid, MediumParams};
use crate::protocol::{InputSpinor, PulseSchedule};
use crate::units::{mhz_to_angular, delta_m2_beat_mhz, GAMMA_RB_D1};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// The experiment's own parameters (20 μs pulses at 1.7 mm/μs).
    Paper,
    /// Compressed medium that runs in seconds.
    Desk,
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "paper" => Ok(Preset::Paper),
            "desk" => Ok(Preset::Desk),
            o => Err(Error::InvalidInput(format!("unknown preset '{o}' (paper or desk)"))),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::Paper => "paper",
            Preset::Desk => "desk",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SchemeSection {
    pub variant: Variant,
    pub leakage: bool,
    /// Excited-state decay rate Γ, rad/μs.
    pub gamma: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MediumSection {
    /// mm
    pub length: f64,
    pub optical_depth: f64,
    /// rad/μs
    pub gamma_ground: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DriveSection {
    /// rad/μs
    pub omega_c: f64,
    /// One-photon detuning of the control, rad/μs.
    pub delta: f64,
    /// G
    pub b_field: f64,
    pub g_factor: f64,
    /// Incident difference frequency ω_S1 − ω_S2 in MHz; `None` places both
    /// signals on two-photon resonance.
    pub difference_mhz: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScheduleSection {
    /// μs
    pub pulse_start: f64,
    pub pulse_length: f64,
    pub pulse_edge: f64,
    /// Peak signal Rabi frequency, rad/μs.
    pub amplitude: f64,
    pub alpha: f64,
    pub beta: f64,
    /// Relative input phase φ₀, rad.
    pub phase: f64,
    /// Control switch-off relative to the pulse's falling edge, μs
    /// (negative: after it).
    pub lead: f64,
    pub ramp: f64,
    pub t_dark: f64,
    pub read_fraction: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridSection {
    pub nz: usize,
    /// μs; `None` ends the grid `read_time` after the read ramp.
    pub t_max: Option<f64>,
    pub read_time: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSection {
    /// G
    pub b_values: Vec<f64>,
    /// Fixed incident difference frequency of the field sweep, MHz.
    pub difference_mhz: f64,
    /// rad/μs
    pub omega_c_values: Vec<f64>,
    /// rms width of the slow-light probe, μs.
    pub slow_sigma: f64,
    pub slow_nz: usize,
    /// Half-range of the transmission map, rad/μs; `None` uses twice the
    /// measured transparency width.
    pub scan_span: Option<f64>,
    pub scan_n: usize,
    pub cross_checks: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OutputSection {
    /// Keep every n-th trace sample in CSV output.
    pub trace_stride: usize,
    /// rms photodiode noise relative to the trace maximum.
    pub detector_noise: f64,
    /// Trace file read by `fit-beat`.
    pub trace: Option<String>,
    /// Beat-fit window, μs; `None` picks it from the trace.
    pub fit_t0: Option<f64>,
    pub fit_t1: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub preset: Preset,
    pub scheme: SchemeSection,
    pub medium: MediumSection,
    pub drive: DriveSection,
    pub schedule: ScheduleSection,
    pub grid: GridSection,
    pub sweep: SweepSection,
    pub output: OutputSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::preset(Preset::Paper)
    }
}

const SECTIONS: [&str; 7] = ["scheme", "medium", "drive", "schedule", "grid", "sweep", "output"];

impl RunConfig {
    pub fn preset(p: Preset) -> Self {
        let b_values = vec![0.05, 0.10, 0.15, 0.20, 0.25, 0.30];
        let difference_mhz = delta_m2_beat_mhz(0.5, 0.175);
        let scheme = SchemeSection { variant: Variant::Tripod4, leakage: false, gamma: GAMMA_RB_D1 };
        let output = OutputSection { trace_stride: 1, detector_noise: 0.0, trace: None, fit_t0: None, fit_t1: None };
        match p {
            Preset::Paper => RunConfig {
                preset: p,
                scheme,
                medium: MediumSection { length: 50.0, optical_depth: 200.0, gamma_ground: 0.0 },
                // Ω_C gives v_g ≈ 1.7 mm/μs at this optical depth.
                drive: DriveSection { omega_c: 7.85, delta: 0.0, b_field: 0.15, g_factor: 0.5, difference_mhz: None },
                schedule: ScheduleSection {
                    pulse_start: 1.0,
                    pulse_length: 20.0,
                    pulse_edge: 1.0,
                    amplitude: 0.05,
                    alpha: 1.0,
                    beta: 1.0,
                    phase: 0.0,
                    lead: 0.0,
                    ramp: 1.0,
                    t_dark: 10.0,
                    read_fraction: 1.0,
                },
                grid: GridSection { nz: 240, t_max: None, read_time: 40.0 },
                sweep: SweepSection {
                    b_values,
                    difference_mhz,
                    omega_c_values: vec![6.0, 6.5, 7.0, 7.5, 8.0, 8.5, 9.0, 9.5, 10.0, 10.5],
                    slow_sigma: 8.0,
                    slow_nz: 120,
                    scan_span: None,
                    scan_n: 21,
                    cross_checks: 3,
                },
                output,
            },
            Preset::Desk => RunConfig {
                preset: p,
                scheme,
                medium: MediumSection { length: 50.0, optical_depth: 40.0, gamma_ground: 0.0 },
                drive: DriveSection { omega_c: 20.0, delta: 0.0, b_field: 0.15, g_factor: 0.5, difference_mhz: None },
                schedule: ScheduleSection {
                    pulse_start: 1.0,
                    pulse_length: 1.0,
                    pulse_edge: 0.25,
                    amplitude: 0.05,
                    alpha: 1.0,
                    beta: 1.0,
                    phase: 0.0,
                    lead: -0.1,
                    ramp: 0.5,
                    t_dark: 10.0,
                    read_fraction: 0.1,
                },
                grid: GridSection { nz: 80, t_max: None, read_time: 80.0 },
                sweep: SweepSection {
                    b_values,
                    difference_mhz,
                    omega_c_values: (0..10).map(|i| 6.0 + i as f64 / 3.0).collect(),
                    slow_sigma: 8.0,
                    slow_nz: 50,
                    scan_span: None,
                    scan_n: 21,
                    cross_checks: 3,
                },
                output,
            },
        }
    }

    /// Every key as (section, key, value) in canonical order.
    pub fn entries(&self) -> Vec<(&'static str, &'static str, String)> {
        fn opt(v: &Option<f64>) -> String {
            v.map_or("auto".into(), |x| x.to_string())
        }
        fn list(v: &[f64]) -> String {
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
        }
        let (s, m, d, p, g, w, o) = (
            &self.scheme,
            &self.medium,
            &self.drive,
            &self.schedule,
            &self.grid,
            &self.sweep,
            &self.output,
        );
        vec![
            ("scheme", "variant", s.variant.to_string()),
            ("scheme", "leakage", s.leakage.to_string()),
            ("scheme", "gamma", s.gamma.to_string()),
            ("medium", "length", m.length.to_string()),
            ("medium", "optical_depth", m.optical_depth.to_string()),
            ("medium", "gamma_ground", m.gamma_ground.to_string()),
            ("drive", "omega_c", d.omega_c.to_string()),
            ("drive", "delta", d.delta.to_string()),
            ("drive", "b_field", d.b_field.to_string()),
            ("drive", "g_factor", d.g_factor.to_string()),
            ("drive", "difference_mhz", opt(&d.difference_mhz)),
            ("schedule", "pulse_start", p.pulse_start.to_string()),
            ("schedule", "pulse_length", p.pulse_length.to_string()),
            ("schedule", "pulse_edge", p.pulse_edge.to_string()),
            ("schedule", "amplitude", p.amplitude.to_string()),
            ("schedule", "alpha", p.alpha.to_string()),
            ("schedule", "beta", p.beta.to_string()),
            ("schedule", "phase", p.phase.to_string()),
            ("schedule", "lead", p.lead.to_string()),
            ("schedule", "ramp", p.ramp.to_string()),
            ("schedule", "t_dark", p.t_dark.to_string()),
            ("schedule", "read_fraction", p.read_fraction.to_string()),
            ("grid", "nz", g.nz.to_string()),
            ("grid", "t_max", opt(&g.t_max)),
            ("grid", "read_time", g.read_time.to_string()),
            ("sweep", "b_values", list(&w.b_values)),
            ("sweep", "difference_mhz", w.difference_mhz.to_string()),
            ("sweep", "omega_c_values", list(&w.omega_c_values)),
            ("sweep", "slow_sigma", w.slow_sigma.to_string()),
            ("sweep", "slow_nz", w.slow_nz.to_string()),
            ("sweep", "scan_span", opt(&w.scan_span)),
            ("sweep", "scan_n", w.scan_n.to_string()),
            ("sweep", "cross_checks", w.cross_checks.to_string()),
            ("output", "trace_stride", o.trace_stride.to_string()),
            ("output", "detector_noise", o.detector_noise.to_string()),
            ("output", "trace", o.trace.clone().unwrap_or_else(|| "none".into())),
            ("output", "fit_t0", opt(&o.fit_t0)),
            ("output", "fit_t1", opt(&o.fit_t1)),
        ]
    }

    /// Sets one key; the error message does not carry the line.
    fn set(&mut self, section: &str, key: &str, v: &str) -> std::result::Result<(), String> {
        let (s, m, d, p, g, w, o) = (
            &mut self.scheme,
            &mut self.medium,
            &mut self.drive,
            &mut self.schedule,
            &mut self.grid,
            &mut self.sweep,
            &mut self.output,
        );
        match (section, key) {
            ("scheme", "variant") => s.variant = v.parse().map_err(|e: Error| e.to_string())?,
            ("scheme", "leakage") => s.leakage = boolean(v)?,
            ("scheme", "gamma") => s.gamma = positive(v)?,
            ("medium", "length") => m.length = positive(v)?,
            ("medium", "optical_depth") => m.optical_depth = non_negative(v)?,
            ("medium", "gamma_ground") => m.gamma_ground = non_negative(v)?,
            ("drive", "omega_c") => d.omega_c = non_negative(v)?,
            ("drive", "delta") => d.delta = finite(v)?,
            ("drive", "b_field") => d.b_field = finite(v)?,
            ("drive", "g_factor") => d.g_factor = finite(v)?,
            ("drive", "difference_mhz") => d.difference_mhz = auto(v, finite)?,
            ("schedule", "pulse_start") => p.pulse_start = non_negative(v)?,
            ("schedule", "pulse_length") => p.pulse_length = positive(v)?,
            ("schedule", "pulse_edge") => p.pulse_edge = positive(v)?,
            ("schedule", "amplitude") => p.amplitude = positive(v)?,
            ("schedule", "alpha") => p.alpha = non_negative(v)?,
            ("schedule", "beta") => p.beta = non_negative(v)?,
            ("schedule", "phase") => p.phase = finite(v)?,
            ("schedule", "lead") => p.lead = finite(v)?,
            ("schedule", "ramp") => p.ramp = positive(v)?,
            ("schedule", "t_dark") => p.t_dark = non_negative(v)?,
            ("schedule", "read_fraction") => p.read_fraction = non_negative(v)?,
            ("grid", "nz") => g.nz = count(v, 2)?,
            ("grid", "t_max") => g.t_max = auto(v, positive)?,
            ("grid", "read_time") => g.read_time = positive(v)?,
            ("sweep", "b_values") => w.b_values = values(v, finite)?,
            ("sweep", "difference_mhz") => w.difference_mhz = finite(v)?,
            ("sweep", "omega_c_values") => w.omega_c_values = values(v, positive)?,
            ("sweep", "slow_sigma") => w.slow_sigma = positive(v)?,
            ("sweep", "slow_nz") => w.slow_nz = count(v, 2)?,
            ("sweep", "scan_span") => w.scan_span = auto(v, positive)?,
            ("sweep", "scan_n") => w.scan_n = count(v, 3)?,
            ("sweep", "cross_checks") => w.cross_checks = count(v, 0)?,
            ("output", "trace_stride") => o.trace_stride = count(v, 1)?,
            ("output", "detector_noise") => o.detector_noise = non_negative(v)?,
            ("output", "trace") => {
                o.trace = match v {
                    "" | "none" => None,
                    path => Some(path.to_string()),
                }
            }
            ("output", "fit_t0") => o.fit_t0 = auto(v, finite)?,
            ("output", "fit_t1") => o.fit_t1 = auto(v, finite)?,
            _ => return Err(format!("unknown key '{key}' in [{section}]")),
        }
        Ok(())
    }

    /// INI text that [`parse_config`] maps back to `self`.
    pub fn serialize(&self) -> String {
        let mut out = format!("preset = {}\n", self.preset);
        let mut current = "";
        for (sec, key, val) in self.entries() {
            if sec != current {
                out.push_str(&format!("\n[{sec}]\n"));
                current = sec;
            }
            out.push_str(&format!("{key} = {val}\n"));
        }
        out
    }

    pub fn level_scheme(&self) -> Result<LevelScheme> {
        build_scheme(self.scheme.variant, self.scheme.gamma, self.scheme.leakage)
    }

    pub fn medium_params(&self) -> MediumParams {
        MediumParams::from_optical_depth(
            self.medium.optical_depth,
            self.scheme.gamma,
            self.medium.length,
            self.medium.gamma_ground,
        )
    }

    /// Drive with the signals placed for the configured difference
    /// frequency (two-photon resonance when unset).
    pub fn drive_config(&self) -> DriveConfig {
        let d = &self.drive;
        let base = DriveConfig {
            omega_c: d.omega_c,
            one_photon_detuning: d.delta,
            delta1: 0.0,
            delta2: 0.0,
            b_field: d.b_field,
            g_factor: d.g_factor,
        };
        match d.difference_mhz {
            Some(f) => base.with_symmetric_signals(mhz_to_angular(f)),
            None => base,
        }
    }

    pub fn spinor(&self) -> InputSpinor {
        let s = &self.schedule;
        InputSpinor { alpha: s.alpha, beta: s.beta, phase: s.phase }
    }

    /// Storage schedule whose signal-1 segment is the pulse template; apply
    /// [`RunConfig::spinor`] through `run_storage`.
    pub fn storage_schedule(&self) -> PulseSchedule {
        let s = &self.schedule;
        PulseSchedule::storage(
            s.pulse_start,
            s.pulse_length,
            s.pulse_edge,
            s.amplitude,
            (1.0, 0.0, 0.0),
            s.lead,
            s.ramp,
            s.t_dark,
            s.read_fraction,
        )
    }

    /// Storage grid: explicit `t_max` or `read_time` after the read ramp.
    pub fn storage_grid(&self) -> Result<Grid> {
        self.storage_grid_for(&self.drive_config())
    }

    /// Storage grid with the time step resolving `drive`.
    pub fn storage_grid_for(&self, drive: &DriveConfig) -> Result<Grid> {
        let sched = self.storage_schedule();
        let block = sched.storage.expect("storage schedule");
        let t_max = self.grid.t_max.unwrap_or(block.read_start() + self.grid.read_time);
        let spin = sched.with_spinor(self.schedule.alpha.max(1.0), self.schedule.beta.max(1.0), 0.0)?;
        let rate = step_rate(&self.level_scheme()?, drive, &spin)?;
        Grid::resolving(self.grid.nz, self.medium.length, t_max, rate)
    }
}

fn number(v: &str) -> std::result::Result<f64, String> {
    v.parse::<f64>().map_err(|_| format!("'{v}' is not a number"))
}

fn finite(v: &str) -> std::result::Result<f64, String> {
    let x = number(v)?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{v} is out of range (must be finite)"))
    }
}

fn positive(v: &str) -> std::result::Result<f64, String> {
    let x = finite(v)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("{v} is out of range (must be > 0)"))
    }
}

fn non_negative(v: &str) -> std::result::Result<f64, String> {
    let x = finite(v)?;
    if x >= 0.0 {
        Ok(x)
    } else {
        Err(format!("{v} is out of range (must be >= 0)"))
    }
}

fn count(v: &str, min: usize) -> std::result::Result<usize, String> {
    let n: usize = v.parse().map_err(|_| format!("'{v}' is not a non-negative integer"))?;
    if n >= min {
        Ok(n)
    } else {
        Err(format!("{v} is out of range (must be >= {min})"))
    }
}

fn boolean(v: &str) -> std::result::Result<bool, String> {
    match v.to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(format!("'{v}' is not a boolean")),
    }
}

fn auto(
    v: &str,
    f: fn(&str) -> std::result::Result<f64, String>,
) -> std::result::Result<Option<f64>, String> {
    if v.eq_ignore_ascii_case("auto") {
        Ok(None)
    } else {
        f(v).map(Some)
    }
}

fn values(
    v: &str,
    f: fn(&str) -> std::result::Result<f64, String>,
) -> std::result::Result<Vec<f64>, String> {
    let out: Vec<f64> = v
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(f)
        .collect::<std::result::Result<_, _>>()?;
    if out.is_empty() {
        return Err("list is empty".into());
    }
    Ok(out)
}

enum Line<'a> {
    Blank,
    Section(&'a str),
    Pair(&'a str, &'a str),
}

fn lex(raw: &str) -> std::result::Result<Line<'_>, String> {
    let text = match raw.find(['#', ';']) {
        Some(i) => &raw[..i],
        None => raw,
    }
    .trim();
    if text.is_empty() {
        return Ok(Line::Blank);
    }
    if let Some(rest) = text.strip_prefix('[') {
        let name = rest
            .strip_suffix(']')
            .ok_or_else(|| format!("unterminated section header '{text}'"))?
            .trim();
        return Ok(Line::Section(name));
    }
    let (k, v) = text
        .split_once('=')
        .ok_or_else(|| format!("expected 'key = value', got '{text}'"))?;
    let k = k.trim();
    if k.is_empty() {
        return Err("missing key before '='".into());
    }
    Ok(Line::Pair(k, v.trim()))
}

/// Parses a configuration, starting from the preset named by a leading
/// `preset = ...` line (or `preset_override` when given).
pub fn parse_config_with(text: &str, preset_override: Option<Preset>) -> Result<RunConfig> {
    let err = |line: usize, msg: String| Error::Config { line, msg };
    // First pass: syntax and the global preset key.
    let mut lines = Vec::new();
    let mut preset = Preset::Paper;
    let mut section: Option<&str> = None;
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        match lex(raw).map_err(|m| err(n, m))? {
            Line::Blank => {}
            Line::Section(name) => {
                if !SECTIONS.contains(&name) {
                    return Err(err(n, format!("unknown section [{name}]")));
                }
                section = Some(name);
            }
            Line::Pair(k, v) => match section {
                None if k == "preset" => preset = v.parse().map_err(|e: Error| err(n, e.to_string()))?,
                None => return Err(err(n, format!("key '{k}' outside a section"))),
                Some(s) => lines.push((n, s, k, v)),
            },
        }
    }
    let mut cfg = RunConfig::preset(preset_override.unwrap_or(preset));
    let mut seen: Vec<(&str, &str)> = Vec::new();
    for (n, s, k, v) in lines {
        if seen.contains(&(s, k)) {
            return Err(err(n, format!("duplicate key '{k}' in [{s}]")));
        }
        seen.push((s, k));
        cfg.set(s, k, v).map_err(|m| err(n, format!("{s}.{k}: {m}")))?;
    }
    Ok(cfg)
}

pub fn parse_config(text: &str) -> Result<RunConfig> {
    parse_config_with(text, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_paper_preset() {
        let c = parse_config("").unwrap();
        assert_eq!(c, RunConfig::preset(Preset::Paper));
        assert_eq!(c.medium.length, 50.0);
        assert_eq!(c.schedule.pulse_length, 20.0);
        assert_eq!(c.schedule.t_dark, 10.0);
        assert_eq!(c.drive.b_field, 0.15);
        assert!((c.scheme.gamma - GAMMA_RB_D1).abs() < 1e-12);
    }

    #[test]
    fn negative_dark_time_names_line() {
        let e = parse_config("# c\n[schedule]\nt_dark = -1\n").unwrap_err();
        match e {
            Error::Config { line, msg } => {
                assert_eq!(line, 3);
                assert!(msg.contains("out of range"), "{msg}");
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn unknown_key_and_section() {
        assert!(matches!(parse_config("[grid]\nnzz = 3\n"), Err(Error::Config { line: 2, .. })));
        assert!(matches!(parse_config("\n[gird]\n"), Err(Error::Config { line: 2, .. })));
        assert!(matches!(parse_config("[grid]\nnz 3\n"), Err(Error::Config { line: 2, .. })));
        assert!(matches!(parse_config("[grid]\nnz = 3\nnz = 4\n"), Err(Error::Config { line: 3, .. })));
    }

    #[test]
    fn preset_and_override() {
        let c = parse_config("preset = desk\n[drive]\nomega_c = 12 ; inline\n").unwrap();
        assert_eq!(c.preset, Preset::Desk);
        assert_eq!(c.drive.omega_c, 12.0);
        let c = parse_config_with("preset = desk\n", Some(Preset::Paper)).unwrap();
        assert_eq!(c.preset, Preset::Paper);
    }

    #[test]
    fn round_trip_presets() {
        for p in [Preset::Paper, Preset::Desk] {
            let mut c = RunConfig::preset(p);
            c.output.trace = Some("out/trace_out.csv".into());
            c.grid.t_max = Some(33.25);
            c.sweep.b_values = vec![0.1, 1.0 / 3.0];
            let again = parse_config(&c.serialize()).unwrap();
            assert_eq!(again, c);
        }
    }
}
