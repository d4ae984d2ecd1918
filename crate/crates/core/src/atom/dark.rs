// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::DVector;
use num_complex::Complex64;

use super::hamiltonian::{DriveConfig, HamiltonianPlan};
use super::scheme::LevelScheme;
use crate::error::{Error, Result};

/// Orthonormal basis of ground-state superpositions decoupled from every
/// excited state.
#[derive(Clone, Debug)]
pub struct DarkSubspace {
    /// Full-dimension vectors (zero on excited states).
    pub basis: Vec<DVector<Complex64>>,
    /// Ground states with no coupling at all.
    pub spectators: Vec<usize>,
    /// Number of dark states supported on the driven ground states.
    pub driven_dimension: usize,
}

impl DarkSubspace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Projects `v` off `basis` (twice, for stability) and returns the residual.
fn orthogonalize(mut v: Vec<Complex64>, basis: &[Vec<Complex64>]) -> Vec<Complex64> {
    for _ in 0..2 {
        for b in basis {
            let p = dot(b, &v);
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= p * y);
        }
    }
    v
}

/// Dark subspace of the interaction Hamiltonian at t = 0.
///
/// The coupling block `C` (excited × ground) is read off H; the dark states
/// are the orthogonal complement, within the driven ground states, of the
/// bright vectors `conj(C[e, :])`, obtained by Gram–Schmidt.
pub fn dark_states(
    scheme: &LevelScheme,
    drive: &DriveConfig,
    signal_rabi: (Complex64, Complex64),
) -> Result<DarkSubspace> {
    let plan = HamiltonianPlan::new(scheme, drive)?;
    let amps = plan.channels_from_beams(
        Complex64::new(drive.omega_c, 0.0),
        signal_rabi.0,
        signal_rabi.1,
        0.0,
    );
    let n = scheme.dim();
    let mut h = vec![Complex64::new(0.0, 0.0); n * n];
    plan.fill(0.0, &amps, &mut h);

    let ground = scheme.ground();
    let excited = scheme.excited();
    let scale = excited
        .iter()
        .flat_map(|&e| ground.iter().map(move |&g| (e, g)))
        .map(|(e, g)| h[e * n + g].norm())
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::NoDrives);
    }
    let tol = 1e-12 * scale;

    let (driven, spectators): (Vec<usize>, Vec<usize>) = ground
        .iter()
        .partition(|&&g| excited.iter().any(|&e| h[e * n + g].norm() > tol));

    let mut bright: Vec<Vec<Complex64>> = Vec::new();
    for &e in &excited {
        let row: Vec<Complex64> = driven.iter().map(|&g| h[e * n + g].conj()).collect();
        let r = orthogonalize(row, &bright);
        let nr = norm(&r);
        if nr > tol {
            bright.push(r.into_iter().map(|x| x / nr).collect());
        }
    }

    let mut dark: Vec<Vec<Complex64>> = Vec::new();
    let target = driven.len() - bright.len();
    for k in 0..driven.len() {
        if dark.len() == target {
            break;
        }
        let mut unit = vec![Complex64::new(0.0, 0.0); driven.len()];
        unit[k] = Complex64::new(1.0, 0.0);
        let all: Vec<Vec<Complex64>> = bright.iter().chain(dark.iter()).cloned().collect();
        let r = orthogonalize(unit, &all);
        let nr = norm(&r);
        if nr > 1e-6 {
            dark.push(r.into_iter().map(|x| x / nr).collect());
        }
    }

    let mut basis = Vec::with_capacity(dark.len() + spectators.len());
    for d in &dark {
        let mut v = DVector::zeros(n);
        for (i, &g) in driven.iter().enumerate() {
            v[g] = d[i];
        }
        basis.push(v);
    }
    for &g in &spectators {
        let mut v = DVector::zeros(n);
        v[g] = Complex64::new(1.0, 0.0);
        basis.push(v);
    }
    Ok(DarkSubspace {
        driven_dimension: dark.len(),
        basis,
        spectators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::{build_scheme, Variant};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn tripod_has_two_dark_states() {
        let s = build_scheme(Variant::Tripod4, 36.0, false).unwrap();
        let d = DriveConfig { omega_c: 5.0, ..Default::default() };
        let ds = dark_states(&s, &d, (c(1.0), c(2.0))).unwrap();
        assert_eq!(ds.dimension(), 2);
        assert_eq!(ds.driven_dimension, 2);
        assert!(ds.spectators.is_empty());
    }

    #[test]
    fn lambda_limit_has_one_driven_dark_state_plus_spectator() {
        let s = build_scheme(Variant::Tripod4, 36.0, false).unwrap();
        let d = DriveConfig { omega_c: 5.0, ..Default::default() };
        let ds = dark_states(&s, &d, (c(1.0), c(0.0))).unwrap();
        assert_eq!(ds.driven_dimension, 1);
        assert_eq!(ds.spectators, vec![2]);
        assert_eq!(ds.dimension(), 2);
    }

    #[test]
    fn no_drives_is_an_error() {
        let s = build_scheme(Variant::Tripod4, 36.0, false).unwrap();
        let d = DriveConfig { omega_c: 0.0, ..Default::default() };
        assert!(matches!(dark_states(&s, &d, (c(0.0), c(0.0))), Err(Error::NoDrives)));
    }
}
