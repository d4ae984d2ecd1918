// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;

use super::density::DensityMatrix;
use crate::atom::{Dissipators, HamiltonianMatrix};
use crate::error::{Error, Result};

/// dρ/dt = Mρ + (Mρ)† + Σ γ LρL†, with M = −iH − ½Σγ L†L.
///
/// `m` must already hold M (row-major); `scratch` is an n² buffer.
/// Relies on ρ being Hermitian.
pub(crate) fn rhs_into(
    n: usize,
    m: &[Complex64],
    diss: &Dissipators,
    rho: &[Complex64],
    scratch: &mut [Complex64],
    out: &mut [Complex64],
) {
    let zero = Complex64::new(0.0, 0.0);
    scratch.iter_mut().for_each(|x| *x = zero);
    for i in 0..n {
        let row = &mut scratch[i * n..(i + 1) * n];
        for k in 0..n {
            let mik = m[i * n + k];
            if mik == zero {
                continue;
            }
            let rk = &rho[k * n..(k + 1) * n];
            for (a, r) in row.iter_mut().zip(rk) {
                *a += mik * r;
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = scratch[i * n + j] + scratch[j * n + i].conj();
        }
    }
    for jump in diss.jumps() {
        for &(r1, c1, v1) in &jump.entries {
            for &(r2, c2, v2) in &jump.entries {
                out[r1 * n + r2] += jump.rate * v1 * rho[c1 * n + c2] * v2.conj();
            }
        }
    }
}

/// M = −iH − K.
pub(crate) fn effective_generator(h: &[Complex64], diss: &Dissipators, m: &mut [Complex64]) {
    let k = diss.anti_hermitian();
    for ((mi, hi), ki) in m.iter_mut().zip(h).zip(k) {
        *mi = Complex64::new(hi.im, -hi.re) - ki;
    }
}

/// Lindblad time derivative of `rho`.
pub fn lindblad_rhs(
    rho: &DensityMatrix,
    h: &HamiltonianMatrix,
    diss: &Dissipators,
) -> Result<DensityMatrix> {
    let n = rho.dim();
    for got in [h.dim(), diss.dim()] {
        if got != n {
            return Err(Error::DimensionMismatch { expected: n, got });
        }
    }
    let hv = h.to_row_major();
    let mut m = vec![Complex64::new(0.0, 0.0); n * n];
    effective_generator(&hv, diss, &mut m);
    let mut scratch = vec![Complex64::new(0.0, 0.0); n * n];
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    rhs_into(n, &m, diss, rho.as_slice(), &mut scratch, &mut out);
    Ok(DensityMatrix::from_row_major(n, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::{build_scheme, lindblad_dissipators, Variant};
    use nalgebra::DMatrix;

    #[test]
    fn zero_generator_gives_zero_derivative() {
        let s = build_scheme(Variant::Tripod4, 36.0, false).unwrap();
        let d = crate::atom::Dissipators::new(4, vec![], 0.0, s.ground(), s.vacuum).unwrap();
        let h = HamiltonianMatrix(DMatrix::zeros(4, 4));
        let rho = DensityMatrix::from_diagonal(&[0.1, 0.2, 0.3, 0.4]);
        let dr = lindblad_rhs(&rho, &h, &d).unwrap();
        assert_eq!(dr.max_abs(), 0.0);
    }

    #[test]
    fn excited_population_decays_at_gamma() {
        let s = build_scheme(Variant::Tripod4, 36.0, false).unwrap();
        let d = lindblad_dissipators(&s, 0.0).unwrap();
        let h = HamiltonianMatrix(DMatrix::zeros(4, 4));
        let rho = DensityMatrix::from_diagonal(&[0.0, 0.0, 0.0, 1.0]);
        let dr = lindblad_rhs(&rho, &h, &d).unwrap();
        assert!((dr[(3, 3)].re + 36.0).abs() < 1e-12);
        for g in 0..3 {
            assert!((dr[(g, g)].re - 12.0).abs() < 1e-12);
        }
        assert!(dr.trace().norm() < 1e-12);
    }

    #[test]
    fn dimension_mismatch() {
        let s = build_scheme(Variant::Tripod4, 36.0, false).unwrap();
        let d = lindblad_dissipators(&s, 0.0).unwrap();
        let h = HamiltonianMatrix(DMatrix::zeros(3, 3));
        let rho = DensityMatrix::zeros(4);
        assert!(lindblad_rhs(&rho, &h, &d).is_err());
    }
}
