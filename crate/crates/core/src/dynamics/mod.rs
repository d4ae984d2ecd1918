// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Single-atom Lindblad dynamics: the RK4 integrator used by the propagation
//! code, plus the matrix-exponential and steady-state solvers that serve as
//! its oracles.

mod density;
mod exact;
mod integrate;
mod lindblad;
mod steady;

pub use density::{polariton_vacuum, DensityMatrix};
pub use exact::{exact_evolve, liouvillian};
pub use integrate::{evolve_constant, step, step_constant, Rk4Workspace, POSITIVITY_LIMIT};
pub use lindblad::lindblad_rhs;
#[allow(unused_imports)]
pub(crate) use lindblad::rhs_into;
pub use steady::{steady_state, steady_state_with, STEADY_RELAXATION_FLOOR};
