// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dark-state polariton analytics on classical mean-field amplitudes.
//!
//! Fields are in Rabi units (Ω = g·E), so the spin-wave amplitude of a storage
//! channel is written in the same units: `X = √(G/p)·ρ` with `G = g²N` the
//! coupling density, `p` the population of the channel's vacuum state and `ρ`
//! the per-atom coherence `ρ[partner][populated]`. In these units the dark
//! condition reads `X = −tanΘ·Ω`, and the rotation
//!
//! ```text
//! Ψ      = cosΘ·Ω − sinΘ·X     (dark polariton)
//! bright = sinΘ·Ω + cosΘ·X
//! ```
//!
//! carries ∫|Ψ|²dz = c·∫|Ω_in|²dτ for a pulse fully inside the medium.
//! Sign convention: Ψ₊ pairs with the σ₊ channel (signal 1, coherence with
//! g₋), Ψ₋ with the σ₋ channel (signal 2, coherence with g₊).

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::propagation::{FieldSet, MediumParams, Profile};
use crate::units::C_MM_PER_US;

/// Θ = atan(√(N/2)·g/Ω_C). `g` in rad/μs per √atom, `n` atoms per mm.
///
/// With `omega_c == 0` the stopped-light limit π/2 is returned as
/// `Err(Error::InvalidInput)`; callers that want the limit use
/// [`mixing_angle_or_stopped`].
pub fn mixing_angle(g: f64, n: f64, omega_c: f64) -> Result<f64> {
    if !(g >= 0.0 && n >= 0.0) || !g.is_finite() || !n.is_finite() {
        return Err(Error::InvalidInput(format!("need g, N >= 0, got g = {g}, N = {n}")));
    }
    if omega_c == 0.0 {
        return Err(Error::InvalidInput("control off: stopped light, Θ = π/2".into()));
    }
    if !(omega_c > 0.0) {
        return Err(Error::InvalidInput(format!("omega_c must be positive, got {omega_c}")));
    }
    Ok(((n / 2.0).sqrt() * g / omega_c).atan())
}

/// Like [`mixing_angle`] but maps a switched-off control to π/2.
pub fn mixing_angle_or_stopped(g: f64, n: f64, omega_c: f64) -> Result<f64> {
    match mixing_angle(g, n, omega_c) {
        Err(_) if omega_c == 0.0 && g >= 0.0 && n >= 0.0 => Ok(FRAC_PI_2),
        r => r,
    }
}

/// Mixing angle of a medium given its coupling density `G = g²N` and the
/// weights and population of a storage channel.
pub fn mixing_angle_medium(
    medium: &MediumParams,
    omega_c: f64,
    population: f64,
    w_signal: f64,
    w_control: f64,
) -> f64 {
    let num = (medium.coupling_density * population).sqrt() * w_signal.abs();
    let den = w_control.abs() * omega_c.abs();
    if den == 0.0 {
        FRAC_PI_2
    } else {
        (num / den).atan()
    }
}

/// v_g = c·cos²Θ in mm/μs.
pub fn group_velocity(theta: f64) -> Result<f64> {
    if !(0.0..=FRAC_PI_2 + 1e-15).contains(&theta) {
        return Err(Error::InvalidInput(format!("Θ = {theta} outside [0, π/2]")));
    }
    Ok(C_MM_PER_US * theta.cos().powi(2))
}

/// Classical polariton amplitudes of both channels at one time.
#[derive(Clone, Debug, PartialEq)]
pub struct PolaritonState {
    pub theta: f64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub psi_plus: Vec<Complex64>,
    pub psi_minus: Vec<Complex64>,
    pub bright_plus: Vec<Complex64>,
    pub bright_minus: Vec<Complex64>,
}

impl PolaritonState {
    /// ∫(|Ψ₊|²+|Ψ₋|²)dz with cell spacing `dz`.
    pub fn norm(&self, dz: f64) -> f64 {
        dz * (sum_sq(&self.psi_plus) + sum_sq(&self.psi_minus))
    }

    pub fn bright_norm(&self, dz: f64) -> f64 {
        dz * (sum_sq(&self.bright_plus) + sum_sq(&self.bright_minus))
    }
}

fn sum_sq(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

fn rotate(theta: f64, e: &[Complex64], x: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
    let (s, c) = theta.sin_cos();
    e.iter()
        .zip(x)
        .map(|(&e, &x)| (c * e - s * x, s * e + c * x))
        .unzip()
}

/// Spin-wave amplitudes `√(G/p)·ρ` for the coherences of a profile.
pub fn spin_wave(coherence: &[Complex64], spin_scale: f64) -> Vec<Complex64> {
    coherence.iter().map(|r| r * spin_scale).collect()
}

/// (dark, bright) amplitudes of each channel from photonic envelopes and
/// spin-wave amplitudes on the same grid.
pub fn decompose(
    fields: &FieldSet,
    spin: &[Vec<Complex64>; 2],
    theta: f64,
) -> Result<PolaritonState> {
    let n = fields.omega_s1.len();
    for len in [fields.omega_s2.len(), spin[0].len(), spin[1].len()] {
        if len != n {
            return Err(Error::DimensionMismatch { expected: n, got: len });
        }
    }
    let (psi_plus, bright_plus) = rotate(theta, &fields.omega_s1, &spin[0]);
    let (psi_minus, bright_minus) = rotate(theta, &fields.omega_s2, &spin[1]);
    let (alpha, beta) = spinor_amplitudes(&psi_plus, &psi_minus)
        .unwrap_or((Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)));
    Ok(PolaritonState {
        theta,
        alpha,
        beta,
        psi_plus,
        psi_minus,
        bright_plus,
        bright_minus,
    })
}

/// Inverse rotation: photonic envelopes and spin-wave amplitudes from the
/// dark and bright amplitudes.
pub fn recompose(state: &PolaritonState) -> ([Vec<Complex64>; 2], [Vec<Complex64>; 2]) {
    // The rotation is orthogonal; its inverse is the transpose.
    let (e1, x1) = rotate(-state.theta, &state.psi_plus, &state.bright_plus);
    let (e2, x2) = rotate(-state.theta, &state.psi_minus, &state.bright_minus);
    ([e1, e2], [x1, x2])
}

/// Decomposes a recorded profile. `spin_scale` is `√(G/p)` per channel and
/// `theta` the mixing angle at the profile's time.
pub fn decompose_profile(
    profile: &Profile,
    spin_scale: [f64; 2],
    theta: f64,
) -> Result<PolaritonState> {
    let spin = [
        spin_wave(&profile.coherence[0], spin_scale[0]),
        spin_wave(&profile.coherence[1], spin_scale[1]),
    ];
    decompose(&profile.fields, &spin, theta)
}

/// Normalized overall weights (α, β) of the two modes. The phase of α is
/// that of the Ψ₊ mode's largest sample, so arg(β/α) is the relative phase
/// of the modes at their overlap.
pub fn spinor_amplitudes(
    psi_plus: &[Complex64],
    psi_minus: &[Complex64],
) -> Result<(Complex64, Complex64)> {
    if psi_plus.len() != psi_minus.len() {
        return Err(Error::DimensionMismatch { expected: psi_plus.len(), got: psi_minus.len() });
    }
    let (np, nm) = (sum_sq(psi_plus), sum_sq(psi_minus));
    let total = np + nm;
    if !(total > 0.0) {
        return Err(Error::InvalidInput("zero polariton norm".into()));
    }
    // Phase from the overlap integral so that a common spatial profile
    // leaves arg(β/α) equal to the local relative phase.
    let overlap: Complex64 = psi_plus.iter().zip(psi_minus).map(|(p, m)| p.conj() * m).sum();
    let lead = if np >= nm { psi_plus } else { psi_minus };
    let anchor = lead
        .iter()
        .max_by(|a, b| a.norm_sqr().total_cmp(&b.norm_sqr()))
        .map(|z| z.arg())
        .unwrap_or(0.0);
    let rel = if overlap.norm() > 0.0 { overlap.arg() } else { 0.0 };
    let (a, b) = ((np / total).sqrt(), (nm / total).sqrt());
    let (pa, pb) = if np >= nm { (anchor, anchor + rel) } else { (anchor - rel, anchor) };
    Ok((Complex64::from_polar(a, pa), Complex64::from_polar(b, pb)))
}

/// Photonic share ∫(|Ω₁|²+|Ω₂|²)dz / ∫(|Ψ₊|²+|Ψ₋|²)dz of a profile.
pub fn photonic_fraction(fields: &FieldSet, state: &PolaritonState) -> f64 {
    let photonic = sum_sq(&fields.omega_s1) + sum_sq(&fields.omega_s2);
    let norm = sum_sq(&state.psi_plus) + sum_sq(&state.psi_minus);
    if norm > 0.0 {
        photonic / norm
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn angle_limits() {
        assert!((mixing_angle(2.0, 2.0, 2.0).unwrap() - FRAC_PI_4).abs() < 1e-15);
        assert!(mixing_angle(1.0, 1.0, 1e12).unwrap() < 1e-11);
        assert!(mixing_angle(1.0, 1.0, 0.0).is_err());
        assert_eq!(mixing_angle_or_stopped(1.0, 1.0, 0.0).unwrap(), FRAC_PI_2);
        assert!(mixing_angle(1.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn velocity_limits() {
        assert_eq!(group_velocity(0.0).unwrap(), C_MM_PER_US);
        assert!((group_velocity(FRAC_PI_4).unwrap() - C_MM_PER_US / 2.0).abs() < 1e-9);
        assert!(group_velocity(2.0).is_err());
    }

    #[test]
    fn slow_light_angle() {
        let theta = (1.7f64 / C_MM_PER_US).sqrt().acos();
        assert!((theta - 1.56841).abs() < 1e-5, "{theta}");
        assert!((group_velocity(theta).unwrap() - 1.7).abs() < 1e-9);
    }

    #[test]
    fn photonic_limit() {
        let f = FieldSet {
            omega_c: c(1.0, 0.0),
            omega_s1: vec![c(1.0, 2.0), c(0.5, 0.0)],
            omega_s2: vec![c(0.0, 1.0), c(0.0, 0.0)],
        };
        let spin = [vec![c(3.0, 0.0); 2], vec![c(0.0, 3.0); 2]];
        let s = decompose(&f, &spin, 0.0).unwrap();
        assert_eq!(s.psi_plus, f.omega_s1);
        assert_eq!(s.psi_minus, f.omega_s2);
        let s = decompose(&f, &spin, FRAC_PI_2).unwrap();
        for (p, x) in s.psi_plus.iter().zip(&spin[0]) {
            assert!((p + x).norm() < 1e-15);
        }
    }

    #[test]
    fn spinor_weights() {
        let p = vec![c(1.0, 0.0), c(2.0, 0.0)];
        let z = vec![c(0.0, 0.0); 2];
        let (a, b) = spinor_amplitudes(&p, &z).unwrap();
        assert!((a.norm() - 1.0).abs() < 1e-15 && b.norm() == 0.0);
        let m: Vec<Complex64> = p.iter().map(|x| x * Complex64::from_polar(1.0, 0.3)).collect();
        let (a, b) = spinor_amplitudes(&p, &m).unwrap();
        assert!((a.norm() - b.norm()).abs() < 1e-15);
        assert!(((b / a).arg() - 0.3).abs() < 1e-12);
        assert!(spinor_amplitudes(&z, &z).is_err());
    }

    #[test]
    fn grid_mismatch() {
        let f = FieldSet { omega_c: c(1.0, 0.0), omega_s1: vec![c(0.0, 0.0); 3], omega_s2: vec![c(0.0, 0.0); 3] };
        assert!(decompose(&f, &[vec![c(0.0, 0.0); 2], vec![c(0.0, 0.0); 3]], 0.3).is_err());
    }
}
