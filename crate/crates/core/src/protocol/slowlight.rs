// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

use crate::analysis::{fit_linear, LinFit};
use crate::atom::{DriveConfig, LevelScheme};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::propagation::{measure_delay, propagate, step_rate, transmission, Grid, MediumParams, PropagationOptions, Which};
use crate::protocol::PulseSchedule;
use crate::units::C_MM_PER_US;

/// Weak-probe amplitude relative to the smallest control in a sweep.
const PROBE_FRACTION: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlowLightPoint {
    pub omega_c: f64,
    /// Centroid delay averaged over both signals, μs.
    pub delay: f64,
    /// L/v_g − L/c with the tripod group velocity, μs.
    pub predicted: f64,
    pub rel_error: f64,
    pub transmission: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlowLightSweep {
    pub points: Vec<SlowLightPoint>,
    /// delay against 1/Ω_C²; errors scaled by the fit residual.
    pub fit: LinFit,
    /// GL/(2c): slope of the tripod law, μs·rad²/μs².
    pub tripod_slope: f64,
    /// GL/c: slope of the single-Λ law.
    pub lambda_slope: f64,
}

impl SlowLightSweep {
    /// Distance of the fitted slope from a reference, in fit standard errors.
    pub fn sigmas_from(&self, slope: f64) -> f64 {
        (self.fit.slope - slope).abs() / self.fit.slope_err
    }

    pub fn max_rel_error(&self) -> f64 {
        self.points.iter().map(|p| p.rel_error.abs()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlowLightOptions {
    /// rms width of the Gaussian probe, μs.
    pub sigma: f64,
    pub nz: usize,
    pub execution: Execution,
}

/// Propagates a weak Gaussian pair for each control amplitude and compares
/// the centroid delay with the tripod group-velocity law.
pub fn slow_light_sweep(
    scheme: &LevelScheme,
    medium: &MediumParams,
    drive_base: &DriveConfig,
    length: f64,
    omega_cs: &[f64],
    opts: &SlowLightOptions,
) -> Result<SlowLightSweep> {
    if omega_cs.len() < 3 {
        return Err(Error::InvalidInput("slow-light sweep needs at least 3 control values".into()));
    }
    if omega_cs.iter().any(|&o| !(o > 0.0)) {
        return Err(Error::InvalidInput("control amplitudes must be > 0".into()));
    }
    let amp = PROBE_FRACTION * omega_cs.iter().copied().fold(f64::INFINITY, f64::min);
    let sigma = opts.sigma;
    let points: Vec<Result<SlowLightPoint>> = opts.execution.map(omega_cs, |_, &oc| {
        let drive = DriveConfig { omega_c: oc, ..drive_base.clone() };
        let predicted = medium.delay(oc, length);
        let sched = PulseSchedule::gaussian_pair(4.5 * sigma, sigma, amp, amp);
        let t_max = 9.0 * sigma + 1.5 * predicted;
        let grid = Grid::resolving(opts.nz, length, t_max, step_rate(scheme, &drive, &sched)?)?;
        let popts = PropagationOptions { execution: opts.execution, ..Default::default() };
        let rec = propagate(scheme, medium, &drive, &sched, &grid, &popts)?;
        let delay = 0.5 * (measure_delay(&rec, Which::S1)? + measure_delay(&rec, Which::S2)?);
        let tr = 0.5 * (transmission(&rec, Which::S1)? + transmission(&rec, Which::S2)?);
        Ok(SlowLightPoint {
            omega_c: oc,
            delay,
            predicted,
            rel_error: delay / predicted - 1.0,
            transmission: tr,
        })
    });
    let points = points.into_iter().collect::<Result<Vec<_>>>()?;

    let data: Vec<(f64, f64, f64)> = points.iter().map(|p| (1.0 / (p.omega_c * p.omega_c), p.delay, 1.0)).collect();
    let mut fit = fit_linear(&data)?;
    let dof = (data.len() - 2) as f64;
    let s = (fit.chi_squared / dof).sqrt().max(f64::EPSILON);
    fit.slope_err *= s;
    fit.intercept_err *= s;
    let gl_c = medium.coupling_density * length / C_MM_PER_US;
    Ok(SlowLightSweep { points, fit, tripod_slope: 0.5 * gl_c, lambda_slope: gl_c })
}
