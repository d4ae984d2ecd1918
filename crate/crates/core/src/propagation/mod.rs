// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Maxwell-Bloch propagation of the signal envelopes in the co-moving frame.

mod grid;
mod measure;
mod propagate;
mod record;

pub use grid::{Grid, MediumParams, STEP_BOUND};
pub use measure::{centroid, measure_delay, transmission};
pub use propagate::{propagate, step_rate, PropagationOptions};
pub use record::{FieldRecord, FieldSet, Port, Profile, Snapshot, Which};
