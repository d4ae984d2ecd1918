// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::DVector;
use num_complex::Complex64;

use super::density::DensityMatrix;
use super::exact::liouvillian;
use crate::atom::{Dissipators, HamiltonianMatrix};
use crate::error::{Error, Result};

/// Smallest vacuum-relaxation rate used by [`steady_state`], rad/μs.
pub const STEADY_RELAXATION_FLOOR: f64 = 1e-6;

/// Stationary state with the default tie-break: relaxation towards the
/// polariton vacuum at rate max(γ_g, [`STEADY_RELAXATION_FLOOR`]).
pub fn steady_state(h: &HamiltonianMatrix, diss: &Dissipators) -> Result<DensityMatrix> {
    steady_state_with(h, diss, diss.gamma_ground().max(STEADY_RELAXATION_FLOOR))
}

/// Stationary state of the Liouvillian regularized by
/// [`Dissipators::with_vacuum_relaxation`]`(relaxation)`.
///
/// One population equation is replaced by the trace condition and the
/// resulting linear system solved by LU. With `relaxation = 0` a degenerate
/// null space is reported as an error.
pub fn steady_state_with(
    h: &HamiltonianMatrix,
    diss: &Dissipators,
    relaxation: f64,
) -> Result<DensityMatrix> {
    if !(relaxation >= 0.0 && relaxation.is_finite()) {
        return Err(Error::InvalidInput(format!("relaxation must be >= 0, got {relaxation}")));
    }
    let n = h.dim();
    let reg = diss.with_vacuum_relaxation(relaxation)?;
    let sup = liouvillian(h, &reg)?;
    let mut a = sup.clone();
    for j in 0..n * n {
        a[(0, j)] = Complex64::new(0.0, 0.0);
    }
    for i in 0..n {
        a[(0, i * n + i)] = Complex64::new(1.0, 0.0);
    }
    let mut b = DVector::zeros(n * n);
    b[0] = Complex64::new(1.0, 0.0);

    let scale = sup.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let lu = a.lu();
    let sol = lu
        .solve(&b)
        .ok_or_else(|| Error::DegenerateSteadyState("singular Liouvillian".into()))?;
    if sol.iter().any(|z| !z.is_finite()) {
        return Err(Error::DegenerateSteadyState("non-finite solution".into()));
    }
    let resid = (&sup * &sol).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if resid > 1e-9 * scale {
        return Err(Error::DegenerateSteadyState(format!("residual {resid:.3e}")));
    }
    let mut rho = DensityMatrix::from_row_major(n, sol.iter().copied().collect());
    rho.symmetrize();
    Ok(rho)
}
