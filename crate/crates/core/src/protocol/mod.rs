// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! End-to-end experiments: schedules, storage and retrieval, transmission
//! scans, field sweeps and slow-light delay sweeps.

mod scan;
mod schedule;
mod slowlight;
mod storage;
mod sweep;

pub use scan::{
    eit_width, linspace, propagated_transmission, scan_transmission, steady_transmission, ChannelResponse,
    CrossCheck, ScanOptions, TransmissionMap,
};
pub use schedule::{PulseSchedule, Segment, Shape, StorageBlock};
pub use storage::{
    retrieval_window, run_storage, InputSpinor, PolaritonSample, SpinWave, StorageOptions, StorageResult, SETTLE,
    WINDOW_CUTOFF,
};
pub use slowlight::{slow_light_sweep, SlowLightOptions, SlowLightPoint, SlowLightSweep};
pub use sweep::{fit_sweep, sweep_field, sweep_offset, SweepPoint, SweepSetup};
