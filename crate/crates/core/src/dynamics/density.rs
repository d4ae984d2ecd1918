// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::atom::LevelScheme;

/// Single-atom density matrix, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn zeros(dim: usize) -> Self {
        DensityMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut r = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            r[(i, i)] = Complex64::new(*d, 0.0);
        }
        r
    }

    /// Pure state |ψ⟩⟨ψ|.
    pub fn pure(psi: &[Complex64]) -> Self {
        let n = psi.len();
        let mut r = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                r[(i, j)] = psi[i] * psi[j].conj();
            }
        }
        r
    }

    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), dim * dim, "row-major data has wrong length");
        DensityMatrix { dim, data }
    }

    pub fn from_matrix(m: &DMatrix<Complex64>) -> Self {
        let n = m.nrows();
        let mut r = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                r[(i, j)] = m[(i, j)];
            }
        }
        r
    }

    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.data)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self[(i, i)].re).collect()
    }

    /// max |ρ − ρ†|.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim;
        let mut e: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                e = e.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        e
    }

    pub fn symmetrize(&mut self) {
        symmetrize_slice(self.dim, &mut self.data);
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue_slice(self.dim, &self.data)
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for DensityMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DensityMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

pub(crate) fn symmetrize_slice(n: usize, d: &mut [Complex64]) {
    for i in 0..n {
        d[i * n + i].im = 0.0;
        for j in (i + 1)..n {
            let a = 0.5 * (d[i * n + j] + d[j * n + i].conj());
            d[i * n + j] = a;
            d[j * n + i] = a.conj();
        }
    }
}

pub(crate) fn min_eigenvalue_slice(n: usize, d: &[Complex64]) -> f64 {
    let mut m = DMatrix::from_row_slice(n, n, d);
    let mh = m.adjoint();
    m = (m + mh) * Complex64::new(0.5, 0.0);
    m.symmetric_eigenvalues().iter().fold(f64::INFINITY, |a, &b| a.min(b))
}

/// Polariton vacuum: half the atoms in each of the two extreme ground states,
/// no coherences.
pub fn polariton_vacuum(scheme: &LevelScheme) -> DensityMatrix {
    let mut diag = vec![0.0; scheme.dim()];
    for &v in &scheme.vacuum {
        diag[v] = 0.5;
    }
    DensityMatrix::from_diagonal(&diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::{build_scheme, Variant};

    #[test]
    fn tripod_vacuum() {
        let s = build_scheme(Variant::Tripod4, 36.0, false).unwrap();
        let r = polariton_vacuum(&s);
        assert_eq!(r.populations(), vec![0.5, 0.0, 0.5, 0.0]);
        assert_eq!(r.trace().re, 1.0);
        assert_eq!(r.hermiticity_error(), 0.0);
    }

    #[test]
    fn zeeman_vacuum_in_stretched_states() {
        let s = build_scheme(Variant::Zeeman8, 36.0, false).unwrap();
        let r = polariton_vacuum(&s);
        for (i, p) in r.populations().iter().enumerate() {
            let m = s.states[i].m;
            let expect = if !s.states[i].excited && m.abs() == 2 { 0.5 } else { 0.0 };
            assert_eq!(*p, expect);
        }
    }

    #[test]
    fn min_eigenvalue_of_mixture() {
        let r = DensityMatrix::from_diagonal(&[0.25, 0.75]);
        assert!((r.min_eigenvalue() - 0.25).abs() < 1e-14);
    }
}
