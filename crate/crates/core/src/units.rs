// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Physical constants in the crate's unit system (μs, rad/μs, mm, G).

use std::f64::consts::TAU;

/// Speed of light in mm/μs.
pub const C_MM_PER_US: f64 = 2.998e5;

/// Bohr magneton over Planck's constant, MHz/G.
pub const MU_B_MHZ_PER_G: f64 = 1.399624;

/// Natural linewidth of the Rb D1 line, 2π × 5.746 MHz, in rad/μs.
pub const GAMMA_RB_D1: f64 = TAU * 5.746;

/// Hyperfine g-factor of the 5P1/2 F'=1 level of 87Rb.
pub const G_FACTOR_EXCITED_F1: f64 = -1.0 / 6.0;

/// Default ground-state hyperfine g-factor (F=2 of 87Rb).
pub const G_FACTOR_GROUND_F2: f64 = 0.5;

/// Zeeman shift per unit `m` for g-factor `g_f` at field `b_gauss`, rad/μs.
pub fn zeeman_angular(g_f: f64, b_gauss: f64) -> f64 {
    TAU * g_f * MU_B_MHZ_PER_G * b_gauss
}

/// Beat frequency (MHz) expected from a Δm = 2 Raman coherence.
pub fn delta_m2_beat_mhz(g_f: f64, b_gauss: f64) -> f64 {
    2.0 * g_f * MU_B_MHZ_PER_G * b_gauss
}

pub fn mhz_to_angular(f_mhz: f64) -> f64 {
    TAU * f_mhz
}

pub fn angular_to_mhz(w: f64) -> f64 {
    w / TAU
}
