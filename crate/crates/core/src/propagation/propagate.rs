// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

use std::sync::Mutex;

use num_complex::Complex64;

use super::grid::{Grid, MediumParams, STEP_BOUND};
use super::record::{FieldRecord, FieldSet, Profile, Snapshot};
use crate::atom::{lindblad_dissipators, Channel, ChannelAmplitudes, DriveConfig, HamiltonianPlan, LevelScheme};
use crate::dynamics::{polariton_vacuum, DensityMatrix, Rk4Workspace};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::protocol::PulseSchedule;
use crate::units::C_MM_PER_US;

/// Minimum number of time steps across the shortest ramp or pulse feature.
const STEPS_PER_RAMP: f64 = 20.0;
/// Largest relative field change allowed per z-step.
const MAX_Z_CHANGE: f64 = 0.2;
const CELLS_PER_JOB: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct PropagationOptions {
    /// Times at which to keep every cell's density matrix.
    pub snapshot_times: Vec<f64>,
    /// Keep z-profiles every this many steps (0 = none).
    pub profile_stride: usize,
    /// Full eigenvalue positivity check every this many steps (0 = never).
    pub eigen_stride: usize,
    pub execution: Execution,
    /// Initial state of every cell; the polariton vacuum when `None`.
    pub initial: Option<DensityMatrix>,
    /// Lower bound, as a fraction of the peak input signal, of the field scale
    /// used by the spatial-resolution check. The scale is otherwise the
    /// largest |Ω| along z at the previous time or so far at the current one.
    pub resolution_floor: f64,
}

impl Default for PropagationOptions {
    fn default() -> Self {
        PropagationOptions {
            snapshot_times: Vec::new(),
            profile_stride: 0,
            eigen_stride: 500,
            execution: Execution::default(),
            initial: None,
            resolution_floor: 1e-3,
        }
    }
}

struct Source {
    upper: usize,
    lower: usize,
    weight: f64,
    nu: f64,
}

fn sources(plan: &HamiltonianPlan, ch: Channel) -> Vec<Source> {
    plan.couplings()
        .iter()
        .filter(|c| c.channel == ch)
        .map(|c| Source { upper: c.upper, lower: c.lower, weight: c.weight, nu: c.nu })
        .collect()
}

/// i(G/c) Σ w ρ[u][l] e^{−iντ}
fn source(rho: &[Complex64], n: usize, list: &[Source], k: f64, t: f64) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for src in list {
        let r = rho[src.upper * n + src.lower];
        let r = if src.nu == 0.0 { r } else { r * Complex64::from_polar(1.0, -src.nu * t) };
        s += src.weight * r;
    }
    Complex64::new(0.0, k) * s
}

fn peak_rate(plan: &HamiltonianPlan, scheme: &LevelScheme, drive: &DriveConfig, schedule: &PulseSchedule) -> f64 {
    let peak_s = schedule.peak_signal();
    let mix = if plan.leakage() { std::f64::consts::SQRT_2 } else { 1.0 };
    let peak_amps = ChannelAmplitudes {
        control: Complex64::new(schedule.peak_control(drive.omega_c), 0.0),
        plus: Complex64::new(peak_s * mix, 0.0),
        minus: Complex64::new(peak_s * mix, 0.0),
    };
    plan.matrix(0.0, &peak_amps).norm().max(scheme.decay_rate)
}

/// Fastest rate max(‖H_peak‖, Γ) (rad/μs) the time step must resolve; pass
/// it to [`Grid::resolving`].
pub fn step_rate(scheme: &LevelScheme, drive: &DriveConfig, schedule: &PulseSchedule) -> Result<f64> {
    let plan = HamiltonianPlan::new(scheme, drive)?;
    Ok(peak_rate(&plan, scheme, drive, schedule))
}

/// Marches the atoms and signal fields through the grid.
///
/// Each τ step first advances every cell's ρ by one RK4 step, with the
/// control taken from the schedule at the stage times and the signal held at
/// its local value from the start of the step; then the signal envelopes at
/// the new time are integrated along z by the trapezoidal rule, in cell order.
pub fn propagate(
    scheme: &LevelScheme,
    medium: &MediumParams,
    drive: &DriveConfig,
    schedule: &PulseSchedule,
    grid: &Grid,
    opts: &PropagationOptions,
) -> Result<FieldRecord> {
    medium.validate()?;
    grid.validate()?;
    schedule.validate()?;
    let plan = HamiltonianPlan::new(scheme, drive)?;
    let diss = lindblad_dissipators(scheme, medium.gamma_ground)?;
    let n = scheme.dim();
    let (nz, nt, dt, dz) = (grid.nz, grid.nt, grid.dt(), grid.dz());

    if let Some(f) = schedule.shortest_feature() {
        if f / dt < STEPS_PER_RAMP {
            return Err(Error::InvalidInput(format!(
                "grid resolves the shortest ramp ({f} us) with {:.1} steps, needs {STEPS_PER_RAMP}",
                f / dt
            )));
        }
    }
    let peak_s = schedule.peak_signal();
    let rate = peak_rate(&plan, scheme, drive, schedule);
    if dt * rate > STEP_BOUND * (1.0 + 1e-9) {
        return Err(Error::StepTooLarge { dt, bound: STEP_BOUND / rate });
    }

    let init = match &opts.initial {
        Some(r) if r.dim() != n => return Err(Error::DimensionMismatch { expected: n, got: r.dim() }),
        Some(r) => r.clone(),
        None => polariton_vacuum(scheme),
    };
    let mut rho: Vec<Complex64> = Vec::with_capacity(nz * n * n);
    for _ in 0..nz {
        rho.extend_from_slice(init.as_slice());
    }

    let k = medium.coupling_density / C_MM_PER_US;
    let src = [sources(&plan, Channel::SigmaPlus), sources(&plan, Channel::SigmaMinus)];
    let roles = scheme.storage_roles();
    let boundary = |t: f64| {
        plan.channels_from_beams(
            schedule.control_at(t, drive.omega_c),
            schedule.signal1_at(t),
            schedule.signal2_at(t),
            t,
        )
    };

    // Initial fields: the medium has no optical coherence yet, so the
    // boundary value fills the cell.
    let b0 = boundary(0.0);
    let mut field = [vec![b0.plus; nz], vec![b0.minus; nz]];
    let mut s_buf = vec![Complex64::new(0.0, 0.0); nz];

    let mut rec = FieldRecord {
        grid: *grid,
        times: Vec::with_capacity(nt),
        control: Vec::with_capacity(nt),
        input: [Vec::with_capacity(nt), Vec::with_capacity(nt)],
        output: [Vec::with_capacity(nt), Vec::with_capacity(nt)],
        carrier_difference: plan.carrier_difference(),
        detection_weight: plan.detection_weight(),
        profiles: Vec::new(),
        snapshots: Vec::new(),
        min_eigenvalue: f64::INFINITY,
    };
    let mut snap_pending: Vec<f64> = opts.snapshot_times.clone();
    snap_pending.sort_by(f64::total_cmp);
    snap_pending.reverse();

    let mut push = |rec: &mut FieldRecord, step: usize, t: f64, control: Complex64, field: &[Vec<Complex64>; 2], rho: &[Complex64]| {
        rec.times.push(t);
        rec.control.push(control);
        for c in 0..2 {
            rec.input[c].push(field[c][0]);
            rec.output[c].push(field[c][nz - 1]);
        }
        if opts.profile_stride > 0 && step % opts.profile_stride == 0 {
            let coh = |r: usize| {
                let (pop, partner, _, _) = roles[r];
                (0..nz).map(|i| rho[i * n * n + partner * n + pop]).collect()
            };
            rec.profiles.push(Profile {
                t,
                fields: FieldSet { omega_c: control, omega_s1: field[0].clone(), omega_s2: field[1].clone() },
                coherence: [coh(0), coh(1)],
            });
        }
        while snap_pending.last().is_some_and(|&ts| ts <= t + 0.5 * dt) {
            snap_pending.pop();
            let cells = rho
                .chunks(n * n)
                .map(|c| DensityMatrix::from_row_major(n, c.to_vec()))
                .collect();
            rec.snapshots.push(Snapshot { t, cells });
        }
    };
    push(&mut rec, 0, 0.0, b0.control, &field, &rho);

    let floor = (opts.resolution_floor * peak_s).max(f64::MIN_POSITIVE);
    for step in 0..nt - 1 {
        let t = grid.time(step);
        let first_err: Mutex<Option<(usize, Error)>> = Mutex::new(None);
        {
            let field = &field;
            let plan = &plan;
            let diss = &diss;
            opts.execution.for_each_chunk(
                &mut rho,
                CELLS_PER_JOB * n * n,
                || Rk4Workspace::new(n),
                |ws, job, chunk| {
                    for (j, cell) in chunk.chunks_mut(n * n).enumerate() {
                        let i = job * CELLS_PER_JOB + j;
                        let (plus, minus) = (field[0][i], field[1][i]);
                        let r = ws.step(cell, t, dt, diss, |tt, buf| {
                            let amps = ChannelAmplitudes {
                                control: schedule.control_at(tt, drive.omega_c),
                                plus,
                                minus,
                            };
                            plan.fill(tt, &amps, buf);
                        });
                        if let Err(e) = r {
                            let mut g = first_err.lock().expect("error slot");
                            if g.as_ref().is_none_or(|(c, _)| i < *c) {
                                *g = Some((i, e));
                            }
                            return;
                        }
                    }
                },
            );
        }
        if let Some((_, e)) = first_err.into_inner().expect("error slot") {
            return Err(e);
        }

        let t1 = grid.time(step + 1);
        let b = boundary(t1);
        for (c, start) in [b.plus, b.minus].into_iter().enumerate() {
            if src[c].is_empty() {
                field[c].iter_mut().for_each(|f| *f = start);
                continue;
            }
            for (i, s) in s_buf.iter_mut().enumerate() {
                *s = source(&rho[i * n * n..(i + 1) * n * n], n, &src[c], k, t1);
            }
            let f = &mut field[c];
            let mut scale = f.iter().map(|z| z.norm()).fold(floor, f64::max);
            f[0] = start;
            for i in 0..nz - 1 {
                f[i + 1] = f[i] + 0.5 * dz * (s_buf[i] + s_buf[i + 1]);
                scale = scale.max(f[i].norm());
                let ratio = (f[i + 1] - f[i]).norm() / scale;
                if ratio > MAX_Z_CHANGE {
                    return Err(Error::SpatialResolution { cell: i, t: t1, ratio });
                }
            }
        }

        if opts.eigen_stride > 0 && (step + 1) % opts.eigen_stride == 0 {
            for cell in rho.chunks(n * n) {
                let lam = DensityMatrix::from_row_major(n, cell.to_vec()).min_eigenvalue();
                rec.min_eigenvalue = rec.min_eigenvalue.min(lam);
                if lam < crate::dynamics::POSITIVITY_LIMIT {
                    return Err(Error::PositivityViolated { t: t1, value: lam });
                }
            }
        }
        push(&mut rec, step + 1, t1, b.control, &field, &rho);
    }
    Ok(rec)
}
