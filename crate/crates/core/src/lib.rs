// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Light storage in tripod-type EIT media.
//!
//! The crate simulates two weak signal fields and one strong control field
//! interacting with an ensemble of multilevel atoms. Each spatial cell carries
//! a single-atom density matrix evolved under a Lindblad master equation; the
//! signal envelopes are propagated through the cells in the co-moving frame.
//! On top of that sit the dark-polariton analytics, the storage/retrieval
//! protocol, transmission scans, magnetic field sweeps and the beat-note fit.
//!
//! Units throughout: time in μs, angular frequency in rad/μs, length in mm,
//! magnetic field in Gauss. Rabi frequencies use the `g·E` convention, i.e. the
//! interaction Hamiltonian is `-Σ w·Ω |e⟩⟨g| + h.c.` with no factor 1/2.

pub mod analysis;
pub mod atom;
pub mod dynamics;
pub mod error;
pub mod exec;
pub mod io;
pub mod polariton;
pub mod propagation;
pub mod protocol;
pub mod units;

pub use error::{Error, Result};
pub use num_complex::Complex64;
