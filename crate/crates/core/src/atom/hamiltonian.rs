// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Rotating-wave Hamiltonians in a per-state rotating frame.
//!
//! Every state `k` rotates at a frame frequency `θ_k` chosen along a spanning
//! tree of the main transitions (control first, then signal 1, then signal 2),
//! so those couplings are static and the detunings appear on the diagonal.
//! Couplings that close a loop in the level graph keep a residual phase
//! `e^{iνt}`. Optical frequencies are measured from the control carrier, so
//! only the two-photon detunings and Zeeman shifts appear explicitly.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::scheme::{Beam, LevelScheme, Polarization};
use crate::error::{Error, Result};
use crate::units::{zeeman_angular, G_FACTOR_GROUND_F2};

/// Drive parameters shared by all cells.
#[derive(Clone, Debug, PartialEq)]
pub struct DriveConfig {
    /// Control Rabi frequency Ω_C, rad/μs.
    pub omega_c: f64,
    /// One-photon detuning Δ of the control, rad/μs.
    pub one_photon_detuning: f64,
    /// Two-photon detuning δ₁ = ω_C − ω_S1 + g_F μ_B B, rad/μs.
    pub delta1: f64,
    /// Two-photon detuning δ₂ = ω_C − ω_S2 − g_F μ_B B, rad/μs.
    pub delta2: f64,
    /// Magnetic bias field, G.
    pub b_field: f64,
    pub g_factor: f64,
}

impl Default for DriveConfig {
    fn default() -> Self {
        DriveConfig {
            omega_c: 10.0,
            one_photon_detuning: 0.0,
            delta1: 0.0,
            delta2: 0.0,
            b_field: 0.150,
            g_factor: G_FACTOR_GROUND_F2,
        }
    }
}

impl DriveConfig {
    /// Zeeman splitting between adjacent ground sublevels, rad/μs.
    pub fn zeeman(&self) -> f64 {
        zeeman_angular(self.g_factor, self.b_field)
    }

    /// ω_S1 − ω_C, rad/μs.
    pub fn signal1_offset(&self) -> f64 {
        self.zeeman() - self.delta1
    }

    /// ω_S2 − ω_C, rad/μs.
    pub fn signal2_offset(&self) -> f64 {
        -self.zeeman() - self.delta2
    }

    /// ω_S1 − ω_S2: difference frequency of the incident signal beams, rad/μs.
    pub fn carrier_difference(&self) -> f64 {
        self.signal1_offset() - self.signal2_offset()
    }

    /// Sets δ₁, δ₂ for signal beams placed symmetrically around the control at
    /// a given difference frequency (rad/μs), as in the experiment.
    pub fn with_symmetric_signals(mut self, difference: f64) -> Self {
        self.delta1 = self.zeeman() - 0.5 * difference;
        self.delta2 = 0.5 * difference - self.zeeman();
        self
    }
}

/// Field envelope feeding a transition. Signal envelopes are kept per
/// circular polarization, referenced to the carrier of the beam that is
/// resonant for that polarization (σ₊ ↔ signal 1, σ₋ ↔ signal 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Channel {
    Control,
    SigmaPlus,
    SigmaMinus,
}

impl Channel {
    pub fn of(pol: Polarization) -> Self {
        match pol {
            Polarization::Pi => Channel::Control,
            Polarization::SigmaPlus => Channel::SigmaPlus,
            Polarization::SigmaMinus => Channel::SigmaMinus,
        }
    }

    fn main_beam(self) -> Beam {
        match self {
            Channel::Control => Beam::Control,
            Channel::SigmaPlus => Beam::Signal1,
            Channel::SigmaMinus => Beam::Signal2,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ChannelAmplitudes {
    pub control: Complex64,
    pub plus: Complex64,
    pub minus: Complex64,
}

impl ChannelAmplitudes {
    pub fn get(&self, ch: Channel) -> Complex64 {
        match ch {
            Channel::Control => self.control,
            Channel::SigmaPlus => self.plus,
            Channel::SigmaMinus => self.minus,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Coupling {
    pub upper: usize,
    pub lower: usize,
    pub weight: f64,
    pub channel: Channel,
    /// Residual frame frequency ν: H[u][l] = −w·Ω·e^{iνt}.
    pub nu: f64,
}

/// Precomputed frame and coupling list for one scheme and drive.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianPlan {
    dim: usize,
    diagonal: Vec<f64>,
    couplings: Vec<Coupling>,
    leakage: bool,
    carrier_difference: f64,
}

impl HamiltonianPlan {
    pub fn new(scheme: &LevelScheme, drive: &DriveConfig) -> Result<Self> {
        for (name, v) in [
            ("omega_c", drive.omega_c),
            ("delta", drive.one_photon_detuning),
            ("delta1", drive.delta1),
            ("delta2", drive.delta2),
            ("b_field", drive.b_field),
            ("g_factor", drive.g_factor),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!("{name} is not finite")));
            }
        }
        let n = scheme.dim();
        let z_ground = drive.zeeman();
        let energy: Vec<f64> = scheme
            .states
            .iter()
            .map(|s| {
                if s.excited {
                    -drive.one_photon_detuning
                        + s.m as f64 * zeeman_angular(s.excited_g_factor, drive.b_field)
                } else {
                    s.m as f64 * z_ground
                }
            })
            .collect();
        let carrier = |ch: Channel| match ch {
            Channel::Control => 0.0,
            Channel::SigmaPlus => drive.signal1_offset(),
            Channel::SigmaMinus => drive.signal2_offset(),
        };

        // Spanning forest over the main transitions, in priority order.
        let mut edges: Vec<(usize, usize, f64)> = Vec::new();
        for ch in [Channel::Control, Channel::SigmaPlus, Channel::SigmaMinus] {
            for t in &scheme.transitions {
                if Channel::of(t.polarization) == ch && t.beam == ch.main_beam() {
                    edges.push((t.lower, t.upper, carrier(ch)));
                }
            }
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for &(l, u, w) in &edges {
            let (a, b) = (find(&mut parent, l), find(&mut parent, u));
            if a != b {
                parent[a] = b;
                adjacency[l].push((u, w));
                adjacency[u].push((l, -w));
            }
        }
        let mut theta: Vec<Option<f64>> = vec![None; n];
        let root = edges.first().map(|e| e.0).unwrap_or(0);
        let order = std::iter::once(root).chain(0..n);
        for start in order {
            if theta[start].is_some() {
                continue;
            }
            theta[start] = Some(energy[start]);
            let mut stack = vec![start];
            while let Some(k) = stack.pop() {
                let tk = theta[k].expect("visited");
                for &(j, w) in &adjacency[k] {
                    if theta[j].is_none() {
                        theta[j] = Some(tk + w);
                        stack.push(j);
                    }
                }
            }
        }
        let theta: Vec<f64> = theta.into_iter().map(|t| t.expect("all states framed")).collect();
        let diagonal = (0..n).map(|k| energy[k] - theta[k]).collect();

        let couplings = scheme
            .transitions
            .iter()
            .filter(|t| t.beam == Channel::of(t.polarization).main_beam())
            .map(|t| {
                let ch = Channel::of(t.polarization);
                Coupling {
                    upper: t.upper,
                    lower: t.lower,
                    weight: t.weight,
                    channel: ch,
                    nu: theta[t.upper] - theta[t.lower] - carrier(ch),
                }
            })
            .collect();

        Ok(HamiltonianPlan {
            dim: n,
            diagonal,
            couplings,
            leakage: scheme.leakage,
            carrier_difference: drive.carrier_difference(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn couplings(&self) -> &[Coupling] {
        &self.couplings
    }

    pub fn leakage(&self) -> bool {
        self.leakage
    }

    /// ω_S1 − ω_S2 in rad/μs.
    pub fn carrier_difference(&self) -> f64 {
        self.carrier_difference
    }

    /// `true` if no coupling carries a residual phase.
    pub fn is_static(&self) -> bool {
        self.couplings.iter().all(|c| c.nu.abs() < 1e-12)
    }

    /// Converts beam amplitudes (control, signal 1, signal 2) into channel
    /// envelopes at time `t`. With leakage each linearly polarized signal
    /// splits equally into σ₊ and σ₋, and the off-resonant component enters
    /// the other channel at the carrier difference.
    pub fn channels_from_beams(
        &self,
        control: Complex64,
        s1: Complex64,
        s2: Complex64,
        t: f64,
    ) -> ChannelAmplitudes {
        if self.leakage {
            let r = std::f64::consts::FRAC_1_SQRT_2;
            let ph = Complex64::from_polar(1.0, self.carrier_difference * t);
            ChannelAmplitudes {
                control,
                plus: (s1 + s2 * ph) * r,
                minus: (s2 + s1 * ph.conj()) * r,
            }
        } else {
            ChannelAmplitudes {
                control,
                plus: s1,
                minus: s2,
            }
        }
    }

    /// Relative weight of the photodiode intensity `|E₊ + E₋ e^{iΔω t}|²`.
    /// With leakage the detected field is the projection on the common linear
    /// polarization (factor 1/2); otherwise the channels are the beams.
    pub fn detection_weight(&self) -> f64 {
        if self.leakage {
            0.5
        } else {
            1.0
        }
    }

    /// Writes H(t) row-major into `out` (length dim²).
    pub fn fill(&self, t: f64, amps: &ChannelAmplitudes, out: &mut [Complex64]) {
        let n = self.dim;
        out.iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
        for (k, d) in self.diagonal.iter().enumerate() {
            out[k * n + k] = Complex64::new(*d, 0.0);
        }
        for c in &self.couplings {
            let a = amps.get(c.channel);
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let v = if c.nu == 0.0 {
                -a * c.weight
            } else {
                -a * c.weight * Complex64::from_polar(1.0, c.nu * t)
            };
            out[c.upper * n + c.lower] += v;
            out[c.lower * n + c.upper] += v.conj();
        }
    }

    pub fn matrix(&self, t: f64, amps: &ChannelAmplitudes) -> HamiltonianMatrix {
        let n = self.dim;
        let mut buf = vec![Complex64::new(0.0, 0.0); n * n];
        self.fill(t, amps, &mut buf);
        HamiltonianMatrix(DMatrix::from_row_slice(n, n, &buf))
    }
}

/// Dense Hermitian Hamiltonian in rad/μs.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianMatrix(pub DMatrix<Complex64>);

impl HamiltonianMatrix {
    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    /// max |H − H†|.
    pub fn hermiticity_error(&self) -> f64 {
        let h = &self.0;
        let mut err: f64 = 0.0;
        for i in 0..h.nrows() {
            for j in 0..h.ncols() {
                err = err.max((h[(i, j)] - h[(j, i)].conj()).norm());
            }
        }
        err
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Spectral norm (largest |eigenvalue|).
    pub fn norm(&self) -> f64 {
        self.0
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn to_row_major(&self) -> Vec<Complex64> {
        let n = self.dim();
        let mut v = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                v.push(self.0[(i, j)]);
            }
        }
        v
    }
}

/// H at t = 0 with the control at `drive.omega_c` and the given signal beam
/// amplitudes.
pub fn build_hamiltonian(
    scheme: &LevelScheme,
    drive: &DriveConfig,
    signal_rabi: (Complex64, Complex64),
) -> Result<HamiltonianMatrix> {
    build_hamiltonian_at(scheme, drive, signal_rabi, 0.0)
}

pub fn build_hamiltonian_at(
    scheme: &LevelScheme,
    drive: &DriveConfig,
    signal_rabi: (Complex64, Complex64),
    t: f64,
) -> Result<HamiltonianMatrix> {
    if !(signal_rabi.0.is_finite() && signal_rabi.1.is_finite()) {
        return Err(Error::InvalidInput("signal envelopes must be finite".into()));
    }
    let plan = HamiltonianPlan::new(scheme, drive)?;
    let amps = plan.channels_from_beams(
        Complex64::new(drive.omega_c, 0.0),
        signal_rabi.0,
        signal_rabi.1,
        t,
    );
    Ok(plan.matrix(t, &amps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::{build_scheme, Variant};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_drives_give_diagonal_detunings() {
        let s = build_scheme(Variant::Tripod4, 36.0, false).unwrap();
        let d = DriveConfig {
            omega_c: 0.0,
            one_photon_detuning: 2.0,
            delta1: 0.3,
            delta2: -0.7,
            ..Default::default()
        };
        let h = build_hamiltonian(&s, &d, (c(0.0, 0.0), c(0.0, 0.0))).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_eq!(h.0[(i, j)], c(0.0, 0.0));
                }
            }
        }
        assert_eq!(h.0[(0, 0)].re, -0.3);
        assert_eq!(h.0[(1, 1)].re, 0.0);
        assert_eq!(h.0[(2, 2)].re, 0.7);
        assert_eq!(h.0[(3, 3)].re, -2.0);
    }

    #[test]
    fn control_only_has_one_coupling_pair() {
        let s = build_scheme(Variant::Tripod4, 36.0, false).unwrap();
        let d = DriveConfig::default();
        let h = build_hamiltonian(&s, &d, (c(0.0, 0.0), c(0.0, 0.0))).unwrap();
        let off: Vec<_> = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && h.0[(i, j)].norm() > 0.0)
            .collect();
        assert_eq!(off, vec![(1, 3), (3, 1)]);
        assert_eq!(h.hermiticity_error(), 0.0);
    }

    #[test]
    fn tripod_plan_is_static() {
        let s = build_scheme(Variant::Tripod4, 36.0, false).unwrap();
        let plan = HamiltonianPlan::new(&s, &DriveConfig { delta1: 0.2, ..Default::default() }).unwrap();
        assert!(plan.is_static());
    }

    #[test]
    fn zeeman_lambda_detunings_match_tripod_convention() {
        let s = build_scheme(Variant::Zeeman8, 36.0, false).unwrap();
        let d = DriveConfig {
            delta1: 0.11,
            delta2: -0.23,
            b_field: 0.2,
            ..Default::default()
        };
        let plan = HamiltonianPlan::new(&s, &d).unwrap();
        let diag = plan.diagonal();
        let g = |m: i32| (m + 2) as usize;
        assert!(((diag[g(-2)] - diag[g(-1)]) - (-0.11)).abs() < 1e-12);
        assert!(((diag[g(2)] - diag[g(1)]) - 0.23).abs() < 1e-12);
        // Leakage couplings on the σ₊ Λ from m = -2 are detuned by the carrier
        // difference once leakage is switched on.
        let on = build_scheme(Variant::Zeeman8, 36.0, true).unwrap();
        let plan_on = HamiltonianPlan::new(&on, &d).unwrap();
        assert_eq!(plan_on.couplings().len(), plan.couplings().len());
        assert!((plan_on.carrier_difference() - (2.0 * d.zeeman() - 0.11 - 0.23)).abs() < 1e-12);
    }

    #[test]
    fn symmetric_signals_place_beams_around_control() {
        let d = DriveConfig { b_field: 0.15, ..Default::default() }.with_symmetric_signals(1.0);
        assert!((d.carrier_difference() - 1.0).abs() < 1e-12);
        assert!((d.signal1_offset() + d.signal2_offset()).abs() < 1e-12);
        assert!((d.delta1 + d.delta2).abs() < 1e-12);
    }
}
