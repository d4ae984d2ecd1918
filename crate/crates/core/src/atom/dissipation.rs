// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;

use super::scheme::LevelScheme;
use crate::error::{Error, Result};

/// Sparse jump operator `L = Σ v |r⟩⟨c|` applied with rate γ:
/// D[L]ρ = γ (LρL† − ½{L†L, ρ}).
#[derive(Clone, Debug, PartialEq)]
pub struct JumpOperator {
    pub label: String,
    pub rate: f64,
    /// (row, col, value)
    pub entries: Vec<(usize, usize, Complex64)>,
}

impl JumpOperator {
    pub fn transition(label: impl Into<String>, rate: f64, to: usize, from: usize) -> Self {
        JumpOperator {
            label: label.into(),
            rate,
            entries: vec![(to, from, Complex64::new(1.0, 0.0))],
        }
    }

    pub fn projector(label: impl Into<String>, rate: f64, state: usize) -> Self {
        Self::transition(label, rate, state, state)
    }
}

/// Collection of jump operators plus the precomputed anti-Hermitian part
/// `K = ½ Σ γ L†L`, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Dissipators {
    dim: usize,
    jumps: Vec<JumpOperator>,
    gamma_ground: f64,
    ground: Vec<usize>,
    vacuum: [usize; 2],
    anti: Vec<Complex64>,
}

impl Dissipators {
    pub fn new(
        dim: usize,
        jumps: Vec<JumpOperator>,
        gamma_ground: f64,
        ground: Vec<usize>,
        vacuum: [usize; 2],
    ) -> Result<Self> {
        for j in &jumps {
            if !(j.rate >= 0.0 && j.rate.is_finite()) {
                return Err(Error::InvalidInput(format!("jump '{}' has rate {}", j.label, j.rate)));
            }
            if j.entries.iter().any(|&(r, c, _)| r >= dim || c >= dim) {
                return Err(Error::InvalidInput(format!("jump '{}' out of range", j.label)));
            }
        }
        let mut anti = vec![Complex64::new(0.0, 0.0); dim * dim];
        for j in &jumps {
            // (L†L)[a][b] = Σ_r conj(L[r][a]) L[r][b]
            for &(r1, c1, v1) in &j.entries {
                for &(r2, c2, v2) in &j.entries {
                    if r1 == r2 {
                        anti[c1 * dim + c2] += 0.5 * j.rate * v1.conj() * v2;
                    }
                }
            }
        }
        Ok(Dissipators {
            dim,
            jumps,
            gamma_ground,
            ground,
            vacuum,
            anti,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn jumps(&self) -> &[JumpOperator] {
        &self.jumps
    }

    pub fn gamma_ground(&self) -> f64 {
        self.gamma_ground
    }

    pub fn vacuum(&self) -> [usize; 2] {
        self.vacuum
    }

    pub fn ground(&self) -> &[usize] {
        &self.ground
    }

    /// ½ Σ γ L†L, row-major.
    pub fn anti_hermitian(&self) -> &[Complex64] {
        &self.anti
    }

    /// Total rate of population loss out of `state`.
    pub fn decay_rate_out_of(&self, state: usize) -> f64 {
        2.0 * self.anti[state * self.dim + state].re
    }

    /// Adds weak ground-state relaxation towards the polariton vacuum: every
    /// ground state outside the vacuum pair relaxes into both vacuum states at
    /// total rate `rate`, and the vacuum pair exchanges population at `rate/2`.
    /// Without drives the unique stationary state is then the polariton vacuum.
    pub fn with_vacuum_relaxation(&self, rate: f64) -> Result<Self> {
        let mut jumps = self.jumps.clone();
        if rate > 0.0 {
            let [a, b] = self.vacuum;
            for &g in &self.ground {
                if g == a || g == b {
                    continue;
                }
                jumps.push(JumpOperator::transition(format!("relax {g}->{a}"), 0.5 * rate, a, g));
                jumps.push(JumpOperator::transition(format!("relax {g}->{b}"), 0.5 * rate, b, g));
            }
            jumps.push(JumpOperator::transition(format!("mix {a}->{b}"), 0.5 * rate, b, a));
            jumps.push(JumpOperator::transition(format!("mix {b}->{a}"), 0.5 * rate, a, b));
        }
        Dissipators::new(self.dim, jumps, self.gamma_ground, self.ground.clone(), self.vacuum)
    }
}

/// Spontaneous decay along every branching entry plus pure dephasing
/// `√γ_g |g⟩⟨g|` on each ground state. The dephasing makes every ground-state
/// coherence decay at γ_g.
pub fn lindblad_dissipators(scheme: &LevelScheme, gamma_ground: f64) -> Result<Dissipators> {
    if !(gamma_ground >= 0.0 && gamma_ground.is_finite()) {
        return Err(Error::InvalidInput(format!("gamma_ground must be >= 0, got {gamma_ground}")));
    }
    let mut jumps = Vec::new();
    for (upper, list) in &scheme.branching {
        for &(lower, frac) in list {
            jumps.push(JumpOperator::transition(
                format!("decay {}->{}", scheme.states[*upper].label, scheme.states[lower].label),
                scheme.decay_rate * frac,
                lower,
                *upper,
            ));
        }
    }
    let ground = scheme.ground();
    if gamma_ground > 0.0 {
        for &g in &ground {
            jumps.push(JumpOperator::projector(
                format!("dephase {}", scheme.states[g].label),
                gamma_ground,
                g,
            ));
        }
    }
    Dissipators::new(scheme.dim(), jumps, gamma_ground, ground, scheme.vacuum)
}
