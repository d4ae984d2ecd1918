// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

use crate::analysis::{fit_linear, BeatFitResult, LinFit};
use crate::atom::{DriveConfig, LevelScheme};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::propagation::{Grid, MediumParams};
use crate::protocol::{run_storage, InputSpinor, PulseSchedule, StorageOptions};
use crate::units::{angular_to_mhz, delta_m2_beat_mhz};

/// One storage run of a sweep.
#[derive(Debug)]
pub struct SweepPoint {
    /// Field, G.
    pub b: f64,
    pub delta1: f64,
    pub delta2: f64,
    /// Incident difference frequency ω_S1 − ω_S2, MHz.
    pub input_difference_mhz: f64,
    /// Δm = 2 splitting, MHz.
    pub expected_mhz: f64,
    /// Both two-photon detunings inside half the transparency width.
    pub in_window: bool,
    pub efficiency: f64,
    pub fit: Result<BeatFitResult>,
}

#[derive(Clone, Debug)]
pub struct SweepSetup<'a> {
    pub scheme: &'a LevelScheme,
    pub medium: &'a MediumParams,
    pub drive: &'a DriveConfig,
    pub schedule: &'a PulseSchedule,
    pub grid: &'a Grid,
    pub spinor: InputSpinor,
    /// Transparency FWHM (rad/μs) used for the window flag; `None` skips it.
    pub eit_width: Option<f64>,
    pub execution: Execution,
}

impl SweepSetup<'_> {
    fn run(&self, drives: &[DriveConfig]) -> Vec<SweepPoint> {
        let opts = StorageOptions { execution: self.execution, profile_stride: 0 };
        self.execution.map(drives, |_, d| {
            let half = self.eit_width.map(|w| 0.5 * w);
            let in_window = half.is_none_or(|h| d.delta1.abs() <= h && d.delta2.abs() <= h);
            let res = run_storage(self.scheme, self.medium, d, self.schedule, self.grid, self.spinor, &opts);
            let (efficiency, fit) = match res {
                Ok(r) => (r.efficiency, r.fit_beat()),
                Err(e) => (f64::NAN, Err(e)),
            };
            SweepPoint {
                b: d.b_field,
                delta1: d.delta1,
                delta2: d.delta2,
                input_difference_mhz: angular_to_mhz(d.carrier_difference()),
                expected_mhz: delta_m2_beat_mhz(d.g_factor, d.b_field),
                in_window,
                efficiency,
                fit,
            }
        })
    }
}

/// Stores and retrieves at each field with the incident difference
/// frequency held at `difference` (rad/μs), signals placed symmetrically
/// about the control.
pub fn sweep_field(setup: &SweepSetup<'_>, b_values: &[f64], difference: f64) -> Vec<SweepPoint> {
    let drives: Vec<DriveConfig> = b_values
        .iter()
        .map(|&b| DriveConfig { b_field: b, ..setup.drive.clone() }.with_symmetric_signals(difference))
        .collect();
    setup.run(&drives)
}

/// Stores and retrieves at fixed field with two-photon detunings
/// (δ₁, δ₂) = (−δ, +δ) for each δ in `offsets` (rad/μs), i.e. an incident
/// difference frequency of 2Z + 2δ.
pub fn sweep_offset(setup: &SweepSetup<'_>, offsets: &[f64]) -> Vec<SweepPoint> {
    let drives: Vec<DriveConfig> = offsets
        .iter()
        .map(|&d| DriveConfig { delta1: -d, delta2: d, ..setup.drive.clone() })
        .collect();
    setup.run(&drives)
}

/// Error-weighted line through the successfully fitted points of a field
/// sweep: beat frequency (MHz) against B (G).
pub fn fit_sweep(points: &[SweepPoint]) -> Result<LinFit> {
    let data: Vec<(f64, f64, f64)> = points
        .iter()
        .filter_map(|p| p.fit.as_ref().ok().map(|f| (p.b, f.f, f.f_err)))
        .collect();
    if data.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "{} of {} sweep points fitted, need 3",
            data.len(),
            points.len()
        )));
    }
    fit_linear(&data)
}
