// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("dark subspace undefined: all drives are zero")]
    NoDrives,

    #[error("step rejected at t = {t:.6} us: population {value:.3e} below -1e-6 (dt too large)")]
    PositivityViolated { t: f64, value: f64 },

    #[error("time step {dt:.3e} us exceeds the dynamics bound {bound:.3e} us")]
    StepTooLarge { dt: f64, bound: f64 },

    #[error("steady state is not unique: {0}")]
    DegenerateSteadyState(String),

    #[error("field change {ratio:.2} per z-step at cell {cell}, t = {t:.4} us exceeds 0.2 (refine nz)")]
    SpatialResolution { cell: usize, t: f64, ratio: f64 },

    #[error("no pulse found: energy {0:.3e} below threshold")]
    NoPulse(f64),

    #[error("zero input energy")]
    ZeroEnergy,

    #[error("signal pulse does not fit in the medium: spatial extent {extent_mm:.2} mm > L = {length_mm:.2} mm (needs compression factor {factor:.2})")]
    PulseDoesNotFit {
        extent_mm: f64,
        length_mm: f64,
        factor: f64,
    },

    #[error("no beat found: spectral peak {peak:.3e} below 3x noise floor {floor:.3e}")]
    NoBeat { peak: f64, floor: f64 },

    #[error("beat fit did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("fit rejected: residual rms {rms:.3e} exceeds 10% of trace amplitude {amplitude:.3e}")]
    PoorFit { rms: f64, amplitude: f64 },
    #[error("fit window too short: {0}")]
    FitWindow(String),

    #[error("degenerate abscissas in linear fit")]
    DegenerateAbscissas,

    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code used by the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::InvalidInput(_) | Error::PulseDoesNotFit { .. } => 2,
            Error::NoBeat { .. }
            | Error::NoConvergence(_)
            | Error::FitWindow(_)
            | Error::PoorFit { .. }
            | Error::DegenerateAbscissas => 4,
            _ => 3,
        }
    }

    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
