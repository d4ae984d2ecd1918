// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::density::DensityMatrix;
use crate::atom::{Dissipators, HamiltonianMatrix};
use crate::error::{Error, Result};

fn kron(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a.kronecker(b)
}

fn jump_matrix(n: usize, entries: &[(usize, usize, Complex64)]) -> DMatrix<Complex64> {
    let mut l = DMatrix::zeros(n, n);
    for &(r, c, v) in entries {
        l[(r, c)] += v;
    }
    l
}

/// Liouvillian superoperator acting on row-major vec(ρ), built from
/// Kronecker products: vec(AρB) = (A ⊗ Bᵀ) vec(ρ).
pub fn liouvillian(h: &HamiltonianMatrix, diss: &Dissipators) -> Result<DMatrix<Complex64>> {
    let n = h.dim();
    if diss.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: diss.dim() });
    }
    let id = DMatrix::<Complex64>::identity(n, n);
    let mi = Complex64::new(0.0, -1.0);
    let mut sup = (kron(&h.0, &id) - kron(&id, &h.0.transpose())) * mi;
    for j in diss.jumps() {
        let l = jump_matrix(n, &j.entries);
        let ldl = l.adjoint() * &l;
        let g = Complex64::new(j.rate, 0.0);
        let half = Complex64::new(0.5 * j.rate, 0.0);
        sup += kron(&l, &l.map(|z| z.conj())) * g;
        sup -= (kron(&ldl, &id) + kron(&id, &ldl.transpose())) * half;
    }
    Ok(sup)
}

/// ρ(t) = exp(𝓛t) ρ(0) for a constant Hamiltonian, by dense matrix exponential.
pub fn exact_evolve(
    rho: &DensityMatrix,
    h: &HamiltonianMatrix,
    diss: &Dissipators,
    t: f64,
) -> Result<DensityMatrix> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), got: h.dim() });
    }
    let n = rho.dim();
    let sup = liouvillian(h, diss)? * Complex64::new(t, 0.0);
    let prop = sup.exp();
    let v = DVector::from_column_slice(rho.as_slice());
    let out = prop * v;
    Ok(DensityMatrix::from_row_major(n, out.iter().copied().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::{build_scheme, lindblad_dissipators, Variant};

    #[test]
    fn zero_time_is_identity() {
        let s = build_scheme(Variant::Tripod4, 36.0, false).unwrap();
        let d = lindblad_dissipators(&s, 0.1).unwrap();
        let mut hm = DMatrix::zeros(4, 4);
        hm[(1, 3)] = Complex64::new(-3.0, 0.0);
        hm[(3, 1)] = Complex64::new(-3.0, 0.0);
        let rho = DensityMatrix::from_diagonal(&[0.5, 0.0, 0.5, 0.0]);
        let out = exact_evolve(&rho, &HamiltonianMatrix(hm), &d, 0.0).unwrap();
        assert!(out.max_abs_diff(&rho) < 1e-15);
    }

    #[test]
    fn pure_decay_is_exponential() {
        let s = build_scheme(Variant::Tripod4, 36.0, false).unwrap();
        let d = lindblad_dissipators(&s, 0.0).unwrap();
        let rho = DensityMatrix::from_diagonal(&[0.0, 0.0, 0.0, 1.0]);
        let t = 0.05;
        let out = exact_evolve(&rho, &HamiltonianMatrix(DMatrix::zeros(4, 4)), &d, t).unwrap();
        let pe = (-36.0 * t).exp();
        assert!((out[(3, 3)].re - pe).abs() < 1e-12);
        assert!((out[(0, 0)].re - (1.0 - pe) / 3.0).abs() < 1e-12);
    }
}
