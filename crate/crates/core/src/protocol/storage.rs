// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;

use crate::analysis::{fit_beat, fit_beat_at, modulation_depth, BeatFitResult};
use crate::atom::{DriveConfig, LevelScheme};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::polariton::{decompose_profile, mixing_angle_medium, photonic_fraction, spinor_amplitudes};
use crate::propagation::{propagate, FieldRecord, Grid, MediumParams, Port, PropagationOptions, Which};
use crate::protocol::{PulseSchedule, StorageBlock};

/// Settling time after the read ramp before the beat window opens, μs.
pub const SETTLE: f64 = 1.0;
/// The beat window closes once the retrieved per-mode intensity falls below
/// this fraction of its maximum.
pub const WINDOW_CUTOFF: f64 = 0.2;
/// `ramp·Ω_C` below this triggers the non-adiabatic warning.
const ADIABATIC_PRODUCT: f64 = 10.0;

/// Amplitudes and relative phase of the two input signals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InputSpinor {
    pub alpha: f64,
    pub beta: f64,
    pub phase: f64,
}

impl InputSpinor {
    pub fn balanced(phase: f64) -> Self {
        InputSpinor { alpha: 1.0, beta: 1.0, phase }
    }

    pub fn single() -> Self {
        InputSpinor { alpha: 1.0, beta: 0.0, phase: 0.0 }
    }

    /// Expected beat visibility 2|α||β|/(|α|²+|β|²) of equally shaped modes.
    pub fn overlap_visibility(&self) -> f64 {
        let n = self.alpha * self.alpha + self.beta * self.beta;
        if n > 0.0 {
            2.0 * self.alpha * self.beta / n
        } else {
            0.0
        }
    }
}

/// Polariton bookkeeping at one recorded profile.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolaritonSample {
    pub t: f64,
    pub theta: f64,
    /// ∫(|Ψ₊|²+|Ψ₋|²)dz
    pub norm: f64,
    pub bright_norm: f64,
    pub photonic_fraction: f64,
}

/// Stored spin wave at the middle of the dark interval.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinWave {
    pub t: f64,
    pub z: Vec<f64>,
    /// ρ[g₀][g₋] and ρ[g₀][g₊] (or the Zeeman analogues) per cell.
    pub coherence: [Vec<Complex64>; 2],
}

#[derive(Clone, Debug)]
pub struct StorageResult {
    pub record: FieldRecord,
    pub block: StorageBlock,
    pub spinor: InputSpinor,
    /// Per-channel retrieved energy over per-channel input energy.
    pub efficiency: f64,
    /// Part of the input that leaves the medium before the control is off.
    pub leaked: f64,
    /// Retrieved energy over the energy left in the medium at switch-off.
    pub stored_efficiency: f64,
    pub spin_wave: SpinWave,
    /// Beat-fit window on the retrieved photodiode trace.
    pub window: (f64, f64),
    /// Largest |Ω_s| inside the medium during the dark interval, relative
    /// to the peak input amplitude; `None` without recorded profiles.
    pub dark_field: Option<f64>,
    pub polariton: Vec<PolaritonSample>,
    /// (α, β) of the stored polariton at mid-dark.
    pub stored_spinor: Option<(Complex64, Complex64)>,
    pub warnings: Vec<String>,
}

impl StorageResult {
    pub fn times(&self) -> &[f64] {
        &self.record.times
    }

    pub fn input(&self, which: Which) -> Vec<f64> {
        self.record.intensity(Port::Input, which)
    }

    pub fn output(&self, which: Which) -> Vec<f64> {
        self.record.intensity(Port::Output, which)
    }

    /// Retrieved photodiode trace inside the beat window.
    pub fn retrieved(&self) -> (Vec<f64>, Vec<f64>) {
        let out = self.output(Which::Total);
        let (t0, t1) = self.window;
        self.record
            .times
            .iter()
            .zip(out)
            .filter(|(t, _)| **t >= t0 && **t <= t1)
            .map(|(t, y)| (*t, y))
            .unzip()
    }

    pub fn fit_beat(&self) -> Result<BeatFitResult> {
        fit_beat(&self.record.times, &self.output(Which::Total), self.window)
    }

    /// Fit with the beat frequency locked at `f_mhz`; bounds the modulation
    /// depth of traces without a detectable beat.
    pub fn fit_beat_at(&self, f_mhz: f64) -> Result<BeatFitResult> {
        fit_beat_at(&self.record.times, &self.output(Which::Total), self.window, f_mhz)
    }

    /// Modulation depth at `f_mhz` and its standard error.
    pub fn modulation_depth_at(&self, f_mhz: f64) -> Result<(f64, f64)> {
        modulation_depth(&self.record.times, &self.output(Which::Total), self.window, f_mhz)
    }

    /// Polariton norm at the sample nearest `t`.
    pub fn polariton_at(&self, t: f64) -> Option<&PolaritonSample> {
        self.polariton
            .iter()
            .min_by(|a, b| (a.t - t).abs().total_cmp(&(b.t - t).abs()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StorageOptions {
    pub execution: Execution,
    /// z-profiles (for polariton bookkeeping) every this many steps; 0
    /// keeps none.
    pub profile_stride: usize,
}

impl Default for StorageOptions {
    fn default() -> Self {
        StorageOptions { execution: Execution::default(), profile_stride: 100 }
    }
}

/// Per-mode retrieved intensity |E₊|²+|E₋|² at the output.
fn mode_envelope(rec: &FieldRecord) -> Vec<f64> {
    rec.output[0]
        .iter()
        .zip(&rec.output[1])
        .map(|(a, b)| a.norm_sqr() + b.norm_sqr())
        .collect()
}

/// Beat window: from the later of (read ramp end + settling) and the
/// retrieved maximum, to where the retrieved intensity drops below
/// [`WINDOW_CUTOFF`] of that maximum.
pub fn retrieval_window(rec: &FieldRecord, block: &StorageBlock) -> (f64, f64) {
    let env = mode_envelope(rec);
    let times = &rec.times;
    let t_end = *times.last().expect("non-empty record");
    let Some(k0) = times.iter().position(|&t| t >= block.t_on()) else {
        return (t_end, t_end);
    };
    let kp = (k0..env.len())
        .max_by(|&a, &b| env[a].total_cmp(&env[b]))
        .unwrap_or(k0);
    let start = (block.read_start() + SETTLE).max(times[kp]);
    let ks = times.iter().position(|&t| t >= start).unwrap_or(env.len() - 1);
    let ke = (ks.max(kp)..env.len())
        .find(|&k| env[k] < WINDOW_CUTOFF * env[kp])
        .unwrap_or(env.len() - 1);
    (times[ks], times[ke])
}

/// Writes both signals into the medium, holds them for the dark time and
/// reads them out.
///
/// `schedule` must carry a storage block; its signal-1 segments are the
/// pulse template to which `spinor` is applied.
pub fn run_storage(
    scheme: &LevelScheme,
    medium: &MediumParams,
    drive: &DriveConfig,
    schedule: &PulseSchedule,
    grid: &Grid,
    spinor: InputSpinor,
    opts: &StorageOptions,
) -> Result<StorageResult> {
    let block = schedule
        .storage
        .ok_or_else(|| Error::InvalidInput("storage run needs a storage block".into()))?;
    let sched = schedule.with_spinor(spinor.alpha, spinor.beta, spinor.phase)?;
    if sched.signal1.is_empty() && sched.signal2.is_empty() {
        return Err(Error::InvalidInput("input spinor has zero amplitude".into()));
    }

    let v_g = medium.group_velocity(drive.omega_c);
    let extent = v_g * sched.pulse_fwhm();
    if extent > grid.length {
        return Err(Error::PulseDoesNotFit {
            extent_mm: extent,
            length_mm: grid.length,
            factor: extent / grid.length,
        });
    }
    let mut warnings = Vec::new();
    if block.ramp * drive.omega_c.abs() < ADIABATIC_PRODUCT {
        warnings.push(format!(
            "non-adiabatic ramp: ramp*omega_c = {:.2} < {ADIABATIC_PRODUCT}",
            block.ramp * drive.omega_c.abs()
        ));
    }
    if block.read_start() >= grid.t_max {
        return Err(Error::InvalidInput(format!(
            "grid ends at {} us before the read ramp completes at {} us",
            grid.t_max,
            block.read_start()
        )));
    }

    let t_mid = block.dark_start() + 0.5 * block.t_dark;
    let popts = PropagationOptions {
        snapshot_times: vec![t_mid],
        profile_stride: opts.profile_stride,
        execution: opts.execution,
        ..Default::default()
    };
    let rec = propagate(scheme, medium, drive, &sched, grid, &popts)?;

    let dt = grid.dt();
    let mut e_in = 0.0;
    let mut leak = 0.0;
    let mut ret = 0.0;
    for which in [Which::S1, Which::S2] {
        e_in += rec.energy(Port::Input, which);
        let out = rec.intensity(Port::Output, which);
        for (t, y) in rec.times.iter().zip(&out) {
            if *t < block.t_on() {
                leak += y * dt;
            } else {
                ret += y * dt;
            }
        }
    }
    let efficiency = ret / e_in;
    let leaked = leak / e_in;
    let stored_efficiency = if e_in > leak { ret / (e_in - leak) } else { 0.0 };

    let roles = scheme.storage_roles();
    // Each vacuum state holds half the atoms.
    let spin_scale = [(2.0 * medium.coupling_density).sqrt(); 2];
    let (_, _, ws, wc) = roles[0];
    let mut polariton = Vec::with_capacity(rec.profiles.len());
    let mut dark_field: Option<f64> = None;
    let peak = sched.peak_signal();
    for prof in &rec.profiles {
        let theta = mixing_angle_medium(medium, prof.fields.omega_c.norm(), 0.5, ws, wc);
        let st = decompose_profile(prof, spin_scale, theta)?;
        let dz = grid.dz();
        polariton.push(PolaritonSample {
            t: prof.t,
            theta,
            norm: st.norm(dz),
            bright_norm: st.bright_norm(dz),
            photonic_fraction: photonic_fraction(&prof.fields, &st),
        });
        if prof.t >= block.dark_start() && prof.t <= block.t_on() {
            let m = prof
                .fields
                .omega_s1
                .iter()
                .chain(&prof.fields.omega_s2)
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            dark_field = Some(dark_field.unwrap_or(0.0).max(m / peak));
        }
    }

    let snap = rec
        .snapshots
        .first()
        .ok_or_else(|| Error::InvalidInput("grid ends before the dark interval".into()))?;
    let coherence = [0, 1].map(|r| {
        let (pop, partner, _, _) = roles[r];
        snap.cells.iter().map(|c| c[(partner, pop)]).collect::<Vec<_>>()
    });
    let stored_spinor = {
        let x: [Vec<Complex64>; 2] =
            [0, 1].map(|r| coherence[r].iter().map(|c| -c * spin_scale[r]).collect());
        spinor_amplitudes(&x[0], &x[1]).ok()
    };
    let spin_wave = SpinWave {
        t: snap.t,
        z: (0..grid.nz).map(|i| grid.z(i)).collect(),
        coherence,
    };
    let window = retrieval_window(&rec, &block);

    Ok(StorageResult {
        record: rec,
        block,
        spinor,
        efficiency,
        leaked,
        stored_efficiency,
        spin_wave,
        window,
        dark_field,
        polariton,
        stored_spinor,
        warnings,
    })
}
