// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Level schemes, rotating-frame Hamiltonians, dissipators and dark states.

mod cg;
mod dark;
mod dissipation;
mod hamiltonian;
mod scheme;

pub use cg::clebsch_gordan;
pub use dark::{dark_states, DarkSubspace};
pub use dissipation::{lindblad_dissipators, Dissipators, JumpOperator};
pub use hamiltonian::{
    build_hamiltonian, build_hamiltonian_at, Channel, ChannelAmplitudes, Coupling, DriveConfig,
    HamiltonianMatrix, HamiltonianPlan,
};
pub use scheme::{build_scheme, Beam, Level, LevelScheme, Polarization, Transition, Variant};
