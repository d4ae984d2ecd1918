// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

use super::record::{trapz, FieldRecord, Port, Which};
use crate::error::{Error, Result};

/// Intensity-weighted mean time of a uniformly sampled trace. Returns the
/// centroid and the trace energy.
pub fn centroid(times: &[f64], intensity: &[f64]) -> (f64, f64) {
    let dt = if times.len() > 1 { times[1] - times[0] } else { 1.0 };
    let e = trapz(intensity, dt);
    let ti: Vec<f64> = times.iter().zip(intensity).map(|(t, i)| t * i).collect();
    (trapz(&ti, dt) / e, e)
}

/// Delay between input and output centroids, μs.
pub fn measure_delay(record: &FieldRecord, which: Which) -> Result<f64> {
    let (t_in, e_in) = centroid(&record.times, &record.intensity(Port::Input, which));
    if !(e_in > 0.0) {
        return Err(Error::NoPulse(e_in));
    }
    let (t_out, e_out) = centroid(&record.times, &record.intensity(Port::Output, which));
    if !(e_out > 1e-9 * e_in) {
        return Err(Error::NoPulse(e_out));
    }
    Ok(t_out - t_in)
}

/// Output over input energy.
pub fn transmission(record: &FieldRecord, which: Which) -> Result<f64> {
    let e_in = record.energy(Port::Input, which);
    if !(e_in > 0.0) {
        return Err(Error::ZeroEnergy);
    }
    Ok(record.energy(Port::Output, which) / e_in)
}
