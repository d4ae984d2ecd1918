// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;

use super::grid::Grid;
use crate::dynamics::DensityMatrix;

/// Which signal component a measurement refers to. `S1`/`S2` are the σ₊/σ₋
/// channels; `Total` is the photodiode signal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    S1,
    S2,
    Total,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Port {
    /// z = 0
    Input,
    /// z = L
    Output,
}

/// Field envelopes across z at one time, rad/μs. The control is undepleted
/// and therefore a single value.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldSet {
    pub omega_c: Complex64,
    pub omega_s1: Vec<Complex64>,
    pub omega_s2: Vec<Complex64>,
}

/// z-profiles of fields and storage coherences at one time.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile {
    pub t: f64,
    pub fields: FieldSet,
    /// ρ[partner][populated] for the σ₊ and σ₋ storage roles, per cell.
    pub coherence: [Vec<Complex64>; 2],
}

/// Per-cell density matrices at one time.
#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub cells: Vec<DensityMatrix>,
}

/// Result of [`super::propagate`]: boundary traces at every step, decimated
/// z-profiles and requested snapshots.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldRecord {
    pub grid: Grid,
    pub times: Vec<f64>,
    pub control: Vec<Complex64>,
    /// σ₊ and σ₋ channel envelopes at z = 0.
    pub input: [Vec<Complex64>; 2],
    /// σ₊ and σ₋ channel envelopes at z = L.
    pub output: [Vec<Complex64>; 2],
    /// ω_S1 − ω_S2, rad/μs.
    pub carrier_difference: f64,
    pub detection_weight: f64,
    pub profiles: Vec<Profile>,
    pub snapshots: Vec<Snapshot>,
    /// Smallest density-matrix eigenvalue seen at the periodic checks.
    pub min_eigenvalue: f64,
}

impl FieldRecord {
    fn port(&self, port: Port) -> &[Vec<Complex64>; 2] {
        match port {
            Port::Input => &self.input,
            Port::Output => &self.output,
        }
    }

    /// Photodiode intensity κ|E₊ + E₋ e^{iΔω τ}|² at time index n.
    pub fn detected(&self, plus: Complex64, minus: Complex64, t: f64) -> f64 {
        let ph = Complex64::from_polar(1.0, self.carrier_difference * t);
        self.detection_weight * (plus + minus * ph).norm_sqr()
    }

    /// Intensity trace (rad²/μs²).
    pub fn intensity(&self, port: Port, which: Which) -> Vec<f64> {
        let [p, m] = self.port(port);
        match which {
            Which::S1 => p.iter().map(|z| z.norm_sqr()).collect(),
            Which::S2 => m.iter().map(|z| z.norm_sqr()).collect(),
            Which::Total => self
                .times
                .iter()
                .zip(p.iter().zip(m))
                .map(|(&t, (a, b))| self.detected(*a, *b, t))
                .collect(),
        }
    }

    /// ∫ intensity dτ (trapezoid).
    pub fn energy(&self, port: Port, which: Which) -> f64 {
        trapz(&self.intensity(port, which), self.grid.dt())
    }

    pub fn profile_nearest(&self, t: f64) -> Option<&Profile> {
        self.profiles
            .iter()
            .min_by(|a, b| (a.t - t).abs().total_cmp(&(b.t - t).abs()))
    }
}

pub(crate) fn trapz(y: &[f64], dx: f64) -> f64 {
    if y.len() < 2 {
        return 0.0;
    }
    let inner: f64 = y[1..y.len() - 1].iter().sum();
    dx * (inner + 0.5 * (y[0] + y[y.len() - 1]))
}
