// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Beat-note fitting and weighted linear regression.

mod beat;
mod linear;

pub use beat::{fit_beat, fit_beat_at, modulation_depth, spectral_peak, BeatFitResult};
pub use linear::{fit_linear, LinFit};
