// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;

use super::density::{min_eigenvalue_slice, symmetrize_slice, DensityMatrix};
use super::lindblad::{effective_generator, rhs_into};
use crate::atom::{Dissipators, HamiltonianMatrix};
use crate::error::{Error, Result};

/// Most negative eigenvalue (or population) tolerated after a step.
pub const POSITIVITY_LIMIT: f64 = -1e-6;

/// Reusable buffers for RK4 on a flat row-major ρ.
#[derive(Clone, Debug)]
pub struct Rk4Workspace {
    n: usize,
    h: Vec<Complex64>,
    m: Vec<Complex64>,
    k: [Vec<Complex64>; 4],
    tmp: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl Rk4Workspace {
    pub fn new(n: usize) -> Self {
        let z = || vec![Complex64::new(0.0, 0.0); n * n];
        Rk4Workspace {
            n,
            h: z(),
            m: z(),
            k: [z(), z(), z(), z()],
            tmp: z(),
            scratch: z(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn stage(&mut self, idx: usize, t: f64, diss: &Dissipators, hfill: &mut impl FnMut(f64, &mut [Complex64])) {
        hfill(t, &mut self.h);
        effective_generator(&self.h, diss, &mut self.m);
        let (k, tmp, scratch) = (&mut self.k[idx], &self.tmp, &mut self.scratch);
        rhs_into(self.n, &self.m, diss, tmp, scratch, k);
    }

    /// One RK4 step in place. `hfill(t, buf)` writes H(t) row-major into `buf`.
    ///
    /// Checks populations only; the caller decides how often to run the
    /// eigenvalue check.
    pub fn step(
        &mut self,
        rho: &mut [Complex64],
        t: f64,
        dt: f64,
        diss: &Dissipators,
        mut hfill: impl FnMut(f64, &mut [Complex64]),
    ) -> Result<()> {
        let n = self.n;
        self.tmp.copy_from_slice(rho);
        self.stage(0, t, diss, &mut hfill);
        for (x, (r, k)) in self.tmp.iter_mut().zip(rho.iter().zip(&self.k[0])) {
            *x = r + 0.5 * dt * k;
        }
        self.stage(1, t + 0.5 * dt, diss, &mut hfill);
        for (x, (r, k)) in self.tmp.iter_mut().zip(rho.iter().zip(&self.k[1])) {
            *x = r + 0.5 * dt * k;
        }
        // H(t + dt/2) is already in place for the third stage
        effective_generator(&self.h, diss, &mut self.m);
        rhs_into(n, &self.m, diss, &self.tmp, &mut self.scratch, &mut self.k[2]);
        for (x, (r, k)) in self.tmp.iter_mut().zip(rho.iter().zip(&self.k[2])) {
            *x = r + dt * k;
        }
        self.stage(3, t + dt, diss, &mut hfill);
        let w = dt / 6.0;
        for i in 0..n * n {
            rho[i] += w * (self.k[0][i] + 2.0 * self.k[1][i] + 2.0 * self.k[2][i] + self.k[3][i]);
        }
        symmetrize_slice(n, rho);
        for i in 0..n {
            let p = rho[i * n + i].re;
            if !(p >= POSITIVITY_LIMIT) {
                return Err(Error::PositivityViolated { t: t + dt, value: p });
            }
        }
        Ok(())
    }
}

fn check_dims(rho: &DensityMatrix, h_dim: usize, diss: &Dissipators) -> Result<()> {
    for got in [h_dim, diss.dim()] {
        if got != rho.dim() {
            return Err(Error::DimensionMismatch { expected: rho.dim(), got });
        }
    }
    Ok(())
}

fn check_dt(dt: f64) -> Result<()> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidInput(format!("dt must be > 0, got {dt}")));
    }
    Ok(())
}

fn finish(rho: Vec<Complex64>, n: usize, t: f64) -> Result<DensityMatrix> {
    let lam = min_eigenvalue_slice(n, &rho);
    if lam < POSITIVITY_LIMIT {
        return Err(Error::PositivityViolated { t, value: lam });
    }
    Ok(DensityMatrix::from_row_major(n, rho))
}

/// One RK4 step from `t` to `t + dt` under a time-dependent Hamiltonian.
pub fn step(
    rho: &DensityMatrix,
    h: impl Fn(f64) -> HamiltonianMatrix,
    diss: &Dissipators,
    t: f64,
    dt: f64,
) -> Result<DensityMatrix> {
    check_dt(dt)?;
    let n = rho.dim();
    let h0 = h(t);
    check_dims(rho, h0.dim(), diss)?;
    let mut ws = Rk4Workspace::new(n);
    let mut r = rho.as_slice().to_vec();
    ws.step(&mut r, t, dt, diss, |tt, buf| buf.copy_from_slice(&h(tt).to_row_major()))?;
    finish(r, n, t + dt)
}

/// One RK4 step under a constant Hamiltonian.
pub fn step_constant(
    rho: &DensityMatrix,
    h: &HamiltonianMatrix,
    diss: &Dissipators,
    dt: f64,
) -> Result<DensityMatrix> {
    evolve_constant(rho, h, diss, dt, 1)
}

/// `steps` RK4 steps of size `dt` under a constant Hamiltonian.
pub fn evolve_constant(
    rho: &DensityMatrix,
    h: &HamiltonianMatrix,
    diss: &Dissipators,
    dt: f64,
    steps: usize,
) -> Result<DensityMatrix> {
    check_dt(dt)?;
    check_dims(rho, h.dim(), diss)?;
    let n = rho.dim();
    let hv = h.to_row_major();
    let mut ws = Rk4Workspace::new(n);
    let mut r = rho.as_slice().to_vec();
    for s in 0..steps {
        ws.step(&mut r, s as f64 * dt, dt, diss, |_, buf| buf.copy_from_slice(&hv))?;
    }
    finish(r, n, steps as f64 * dt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::{build_scheme, lindblad_dissipators, Variant};
    use nalgebra::DMatrix;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ground_coherence_rotates_at_splitting() {
        let s = build_scheme(Variant::Tripod4, 36.0, false).unwrap();
        let d = lindblad_dissipators(&s, 0.0).unwrap();
        let delta = 0.7;
        let mut hm = DMatrix::zeros(4, 4);
        hm[(0, 0)] = c(-delta, 0.0);
        let h = HamiltonianMatrix(hm);
        let mut rho = DensityMatrix::from_diagonal(&[0.5, 0.5, 0.0, 0.0]);
        rho[(0, 1)] = c(0.5, 0.0);
        rho[(1, 0)] = c(0.5, 0.0);
        let dt = 0.01;
        let out = evolve_constant(&rho, &h, &d, dt, 100).unwrap();
        // ρ01 ∝ e^{-i(E0 - E1)t} = e^{iδt}
        let phase = out[(0, 1)].arg();
        assert!((phase - delta * 1.0).abs() < 1e-9, "{phase}");
    }

    #[test]
    fn excited_decay_matches_exponential() {
        let s = build_scheme(Variant::Tripod4, 36.0, false).unwrap();
        let d = lindblad_dissipators(&s, 0.0).unwrap();
        let h = HamiltonianMatrix(DMatrix::zeros(4, 4));
        let rho = DensityMatrix::from_diagonal(&[0.0, 0.0, 0.0, 1.0]);
        let t = 5.0 / 36.0;
        let steps = 1000;
        let out = evolve_constant(&rho, &h, &d, t / steps as f64, steps).unwrap();
        let expect = (-5.0f64).exp();
        assert!((out[(3, 3)].re / expect - 1.0).abs() < 1e-6);
        assert!((out.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn oversized_step_is_rejected() {
        let s = build_scheme(Variant::Tripod4, 36.0, false).unwrap();
        let d = lindblad_dissipators(&s, 0.0).unwrap();
        let h = HamiltonianMatrix(DMatrix::zeros(4, 4));
        let rho = DensityMatrix::from_diagonal(&[0.0, 0.0, 0.0, 1.0]);
        assert!(matches!(
            step_constant(&rho, &h, &d, 1.0),
            Err(Error::PositivityViolated { .. })
        ));
    }

    #[test]
    fn non_positive_dt_rejected() {
        let s = build_scheme(Variant::Tripod4, 36.0, false).unwrap();
        let d = lindblad_dissipators(&s, 0.0).unwrap();
        let h = HamiltonianMatrix(DMatrix::zeros(4, 4));
        let rho = DensityMatrix::from_diagonal(&[1.0, 0.0, 0.0, 0.0]);
        assert!(step_constant(&rho, &h, &d, 0.0).is_err());
    }
}
