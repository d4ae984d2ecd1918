// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};
use crate::units::C_MM_PER_US;

/// Largest allowed dt·max(‖H‖, Γ).
pub const STEP_BOUND: f64 = 0.05;

/// Uniform (z, τ) grid in the co-moving frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub nz: usize,
    /// Medium length, mm.
    pub length: f64,
    pub nt: usize,
    /// Duration, μs.
    pub t_max: f64,
}

impl Grid {
    pub fn new(nz: usize, length: f64, nt: usize, t_max: f64) -> Result<Self> {
        let g = Grid { nz, length, nt, t_max };
        g.validate()?;
        Ok(g)
    }

    /// Grid whose time step satisfies the dynamics bound for the fastest
    /// rate `rate` (rad/μs).
    pub fn resolving(nz: usize, length: f64, t_max: f64, rate: f64) -> Result<Self> {
        let steps = (t_max * rate / STEP_BOUND).ceil().max(1.0) as usize;
        Grid::new(nz, length, steps + 1, t_max)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nz < 2 || self.nt < 2 {
            return Err(Error::InvalidInput(format!(
                "grid needs nz >= 2 and nt >= 2, got nz={} nt={}",
                self.nz, self.nt
            )));
        }
        if !(self.length > 0.0 && self.length.is_finite()) {
            return Err(Error::InvalidInput("grid length must be > 0".into()));
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(Error::InvalidInput("grid t_max must be > 0".into()));
        }
        Ok(())
    }

    pub fn dz(&self) -> f64 {
        self.length / (self.nz - 1) as f64
    }

    pub fn dt(&self) -> f64 {
        self.t_max / (self.nt - 1) as f64
    }

    pub fn time(&self, n: usize) -> f64 {
        n as f64 * self.dt()
    }

    pub fn z(&self, i: usize) -> f64 {
        i as f64 * self.dz()
    }

    /// Same extent, `factor` times more points in z and τ.
    pub fn refined(&self, factor: usize) -> Grid {
        Grid {
            nz: (self.nz - 1) * factor + 1,
            length: self.length,
            nt: (self.nt - 1) * factor + 1,
            t_max: self.t_max,
        }
    }
}

/// Medium parameters. Only G = g²N enters propagation; g and N separately
/// matter only for the polariton mixing angle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MediumParams {
    /// G = g²N, rad²/(μs²·mm)·mm.
    pub coupling_density: f64,
    /// Ground-state coherence decay rate γ_g, rad/μs.
    pub gamma_ground: f64,
}

impl MediumParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.coupling_density >= 0.0 && self.coupling_density.is_finite()) {
            return Err(Error::InvalidInput("coupling density G must be >= 0".into()));
        }
        if !(self.gamma_ground >= 0.0 && self.gamma_ground.is_finite()) {
            return Err(Error::InvalidInput("gamma_ground must be >= 0".into()));
        }
        Ok(())
    }

    /// Resonant intensity optical depth 2GL/(Γc) of one signal transition
    /// with the vacuum population (½) and the control off.
    pub fn optical_depth(&self, gamma: f64, length: f64) -> f64 {
        2.0 * self.coupling_density * length / (gamma * C_MM_PER_US)
    }

    pub fn from_optical_depth(od: f64, gamma: f64, length: f64, gamma_ground: f64) -> Self {
        MediumParams {
            coupling_density: od * gamma * C_MM_PER_US / (2.0 * length),
            gamma_ground,
        }
    }

    /// Tripod group velocity c/(1 + G/(2Ω_C²)), mm/μs.
    pub fn group_velocity(&self, omega_c: f64) -> f64 {
        C_MM_PER_US / (1.0 + self.coupling_density / (2.0 * omega_c * omega_c))
    }

    /// Expected delay L/v_g − L/c, μs.
    pub fn delay(&self, omega_c: f64, length: f64) -> f64 {
        length / self.group_velocity(omega_c) - length / C_MM_PER_US
    }
}
