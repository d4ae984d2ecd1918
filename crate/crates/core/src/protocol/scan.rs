// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;

use crate::atom::{lindblad_dissipators, Channel, ChannelAmplitudes, DriveConfig, HamiltonianPlan, LevelScheme};
use crate::dynamics::steady_state;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::propagation::{propagate, step_rate, Grid, MediumParams, PropagationOptions};
use crate::protocol::{PulseSchedule, Segment, Shape};
use crate::units::C_MM_PER_US;

/// Probe amplitude relative to Ω_C used for the linear-response solve. Optical
/// pumping scales as its square and must stay far below the 1e-6 rad/μs
/// relaxation floor of the steady-state solve when γ_g = 0.
const PROBE_FRACTION: f64 = 1e-6;

/// Transmission of one probe channel through the whole medium from the
/// steady-state susceptibility.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelResponse {
    /// Σ w·ρ_eg / Ω_probe, dimensionless.
    pub chi: Complex64,
    pub transmission: f64,
}

/// Steady-state (σ₊, σ₋) intensity transmissions for one drive.
pub fn steady_transmission(
    scheme: &LevelScheme,
    medium: &MediumParams,
    drive: &DriveConfig,
    length: f64,
) -> Result<[ChannelResponse; 2]> {
    let plan = HamiltonianPlan::new(scheme, drive)?;
    if !plan.is_static() || plan.leakage() {
        return Err(Error::InvalidInput(
            "steady-state scan needs a static rotating frame (no leakage couplings)".into(),
        ));
    }
    let diss = lindblad_dissipators(scheme, medium.gamma_ground)?;
    let probe = PROBE_FRACTION * drive.omega_c.abs().max(1.0);
    let amps = ChannelAmplitudes {
        control: Complex64::new(drive.omega_c, 0.0),
        plus: Complex64::new(probe, 0.0),
        minus: Complex64::new(probe, 0.0),
    };
    let rho = steady_state(&plan.matrix(0.0, &amps), &diss)?;
    let k = medium.coupling_density / C_MM_PER_US;
    let resp = |ch: Channel| {
        let s: Complex64 = plan
            .couplings()
            .iter()
            .filter(|c| c.channel == ch)
            .map(|c| c.weight * rho[(c.upper, c.lower)])
            .sum();
        let chi = s / probe;
        // ∂zΩ = i k χ Ω  ⇒  |Ω(L)|² = |Ω(0)|² e^{−2 k L Im χ}
        ChannelResponse { chi, transmission: (-2.0 * k * length * chi.im).exp() }
    };
    Ok([resp(Channel::SigmaPlus), resp(Channel::SigmaMinus)])
}

/// Evenly spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// Steady-state and propagated transmission at one map point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrossCheck {
    pub delta1: f64,
    pub delta2: f64,
    pub steady: f64,
    pub propagated: f64,
}

/// Total signal transmission ½(T₊+T₋) over a (δ₁, δ₂) grid. `values` is
/// row-major with δ₁ along rows (`values[i * n2 + j]` at δ₁[i], δ₂[j]);
/// points where the steady-state solve failed are `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransmissionMap {
    pub delta1: Vec<f64>,
    pub delta2: Vec<f64>,
    pub values: Vec<Option<f64>>,
    pub cross_checks: Vec<CrossCheck>,
}

impl TransmissionMap {
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.values[i * self.delta2.len() + j]
    }

    /// Indices of the largest transmission.
    pub fn argmax(&self) -> Option<(usize, usize)> {
        let n2 = self.delta2.len();
        self.values
            .iter()
            .enumerate()
            .filter_map(|(k, v)| v.map(|v| (k, v)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(k, _)| (k / n2, k % n2))
    }

    pub fn missing(&self) -> usize {
        self.values.iter().filter(|v| v.is_none()).count()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanOptions {
    pub execution: Execution,
    /// Number of map points re-evaluated by full propagation.
    pub cross_checks: usize,
    /// Cells of the cross-check propagation.
    pub cross_check_nz: usize,
    /// Plateau length of the cross-check pulse, μs.
    pub cross_check_plateau: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            execution: Execution::default(),
            cross_checks: 3,
            cross_check_nz: 60,
            cross_check_plateau: 8.0,
        }
    }
}

fn detuned(base: &DriveConfig, d1: f64, d2: f64) -> DriveConfig {
    DriveConfig { delta1: d1, delta2: d2, ..base.clone() }
}

/// Transmission map over the (δ₁, δ₂) grid.
pub fn scan_transmission(
    scheme: &LevelScheme,
    medium: &MediumParams,
    drive_base: &DriveConfig,
    length: f64,
    delta1: &[f64],
    delta2: &[f64],
    opts: &ScanOptions,
) -> Result<TransmissionMap> {
    medium.validate()?;
    if delta1.is_empty() || delta2.is_empty() {
        return Err(Error::InvalidInput("empty detuning range".into()));
    }
    let points: Vec<(f64, f64)> = delta1
        .iter()
        .flat_map(|&a| delta2.iter().map(move |&b| (a, b)))
        .collect();
    let values: Vec<Option<f64>> = opts.execution.map(&points, |_, &(d1, d2)| {
        steady_transmission(scheme, medium, &detuned(drive_base, d1, d2), length)
            .ok()
            .map(|[p, m]| 0.5 * (p.transmission + m.transmission))
    });
    if values.iter().all(|v| v.is_none()) {
        // Surface the reason when nothing could be computed.
        steady_transmission(scheme, medium, &detuned(drive_base, points[0].0, points[0].1), length)?;
    }

    let mut map = TransmissionMap {
        delta1: delta1.to_vec(),
        delta2: delta2.to_vec(),
        values,
        cross_checks: Vec::new(),
    };
    let picks = cross_check_points(&map, opts.cross_checks);
    let checks: Vec<Result<CrossCheck>> = Execution::Sequential.map(&picks, |_, &(i, j)| {
        let (d1, d2) = (delta1[i], delta2[j]);
        let propagated = propagated_transmission(
            scheme,
            medium,
            &detuned(drive_base, d1, d2),
            length,
            opts.cross_check_nz,
            opts.cross_check_plateau,
            opts.execution,
        )?;
        Ok(CrossCheck { delta1: d1, delta2: d2, steady: map.get(i, j).unwrap_or(f64::NAN), propagated })
    });
    for c in checks {
        map.cross_checks.push(c?);
    }
    Ok(map)
}

/// The map point nearest the origin plus points along the δ₁ = 0 and
/// δ₂ = 0 lines at a quarter of the range.
fn cross_check_points(map: &TransmissionMap, n: usize) -> Vec<(usize, usize)> {
    let nearest = |v: &[f64], x: f64| {
        (0..v.len())
            .min_by(|&a, &b| (v[a] - x).abs().total_cmp(&(v[b] - x).abs()))
            .unwrap_or(0)
    };
    let (d1, d2) = (&map.delta1, &map.delta2);
    let (i0, j0) = (nearest(d1, 0.0), nearest(d2, 0.0));
    let q1 = 0.25 * (d1[d1.len() - 1] - d1[0]);
    let q2 = 0.25 * (d2[d2.len() - 1] - d2[0]);
    let mut out = vec![
        (i0, j0),
        (nearest(d1, q1), j0),
        (i0, nearest(d2, -q2)),
        (nearest(d1, -q1), nearest(d2, q2)),
        (nearest(d1, q1), nearest(d2, q2)),
    ];
    out.dedup();
    out.retain(|&(i, j)| map.get(i, j).is_some());
    out.truncate(n);
    out
}

/// ½(T₊+T₋) at the end of the plateau of a long smooth pulse propagated
/// through the medium.
pub fn propagated_transmission(
    scheme: &LevelScheme,
    medium: &MediumParams,
    drive: &DriveConfig,
    length: f64,
    nz: usize,
    plateau: f64,
    execution: Execution,
) -> Result<f64> {
    let amp = PROBE_FRACTION * drive.omega_c.abs().max(1.0);
    let edge = 1.0;
    let t_end = edge + plateau + edge + 0.5;
    let seg = Segment::new(0.5, t_end - 0.5, Shape::RampCos, amp, 0.0).with_edge(edge);
    let sched = PulseSchedule {
        control: vec![],
        signal1: vec![seg],
        signal2: vec![seg],
        storage: None,
    };
    let grid = Grid::resolving(nz, length, t_end, step_rate(scheme, drive, &sched)?)?;
    let opts = PropagationOptions { execution, ..Default::default() };
    let rec = propagate(scheme, medium, drive, &sched, &grid, &opts)?;
    // Last sample on the plateau.
    let t_probe = t_end - 0.5 - edge;
    let k = rec
        .times
        .iter()
        .rposition(|&t| t <= t_probe)
        .ok_or_else(|| Error::InvalidInput("grid misses the plateau".into()))?;
    let t = |c: usize| rec.output[c][k].norm_sqr() / rec.input[c][k].norm_sqr();
    Ok(0.5 * (t(0) + t(1)))
}

/// Full width at half maximum (rad/μs) of the σ₊ transparency peak along δ₁
/// at δ₂ = 0, measured above the lowest transmission of a steady-state line
/// scan over ±`span`.
pub fn eit_width(
    scheme: &LevelScheme,
    medium: &MediumParams,
    drive: &DriveConfig,
    length: f64,
    span: f64,
    n: usize,
) -> Result<f64> {
    if n < 5 || !(span > 0.0) {
        return Err(Error::InvalidInput("EIT width scan needs n >= 5 and span > 0".into()));
    }
    let d = linspace(-span, span, n);
    let t: Vec<f64> = d
        .iter()
        .map(|&x| {
            steady_transmission(scheme, medium, &detuned(drive, x, 0.0), length)
                .map(|[p, _]| p.transmission)
        })
        .collect::<Result<_>>()?;
    let kmax = (0..n).max_by(|&a, &b| t[a].total_cmp(&t[b])).expect("n >= 5");
    let base = t.iter().copied().fold(f64::INFINITY, f64::min);
    let half = base + 0.5 * (t[kmax] - base);
    let cross = |range: Box<dyn Iterator<Item = usize>>| -> Option<f64> {
        let mut prev = kmax;
        for k in range {
            if t[k] < half {
                let f = (t[prev] - half) / (t[prev] - t[k]);
                return Some(d[prev] + f * (d[k] - d[prev]));
            }
            prev = k;
        }
        None
    };
    let hi = cross(Box::new(kmax + 1..n));
    let lo = cross(Box::new((0..kmax).rev()));
    match (lo, hi) {
        (Some(a), Some(b)) => Ok(b - a),
        _ => Err(Error::InvalidInput(format!(
            "transparency peak wider than the scan span ±{span}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::{build_scheme, Variant};
    use crate::units::GAMMA_RB_D1;

    #[test]
    fn resonant_channel_is_transparent() {
        let s = build_scheme(Variant::Tripod4, GAMMA_RB_D1, false).unwrap();
        let m = MediumParams::from_optical_depth(10.0, GAMMA_RB_D1, 50.0, 0.0);
        let d = DriveConfig { omega_c: 10.0, ..Default::default() };
        let [p, q] = steady_transmission(&s, &m, &d, 50.0).unwrap();
        assert!(p.transmission > 0.999 && q.transmission > 0.999);
        let far = DriveConfig { delta1: 30.0, ..d };
        let [p, q] = steady_transmission(&s, &m, &far, 50.0).unwrap();
        assert!(p.transmission < 0.5, "{}", p.transmission);
        assert!(q.transmission > 0.999);
    }

    #[test]
    fn two_level_absorption_matches_optical_depth() {
        // Control off: each channel absorbs as e^{-OD} on resonance.
        let s = build_scheme(Variant::Tripod4, GAMMA_RB_D1, false).unwrap();
        let m = MediumParams::from_optical_depth(4.0, GAMMA_RB_D1, 50.0, 0.0);
        let d = DriveConfig { omega_c: 0.0, ..Default::default() };
        let [p, _] = steady_transmission(&s, &m, &d, 50.0).unwrap();
        assert!((p.transmission - (-4.0f64).exp()).abs() < 1e-6, "{}", p.transmission);
    }

    #[test]
    fn linspace_ends() {
        assert_eq!(linspace(-1.0, 1.0, 3), vec![-1.0, 0.0, 1.0]);
        assert!(linspace(0.0, 1.0, 0).is_empty());
    }
}
