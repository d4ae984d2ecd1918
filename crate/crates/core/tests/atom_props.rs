// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::DMatrix;
use polariton_core::atom::{build_hamiltonian, build_scheme, dark_states, DriveConfig, LevelScheme, Polarization, Variant};
use polariton_core::units::GAMMA_RB_D1;
use polariton_core::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn schemes() -> Vec<LevelScheme> {
    vec![
        build_scheme(Variant::Tripod4, GAMMA_RB_D1, false).unwrap(),
        build_scheme(Variant::Zeeman8, GAMMA_RB_D1, false).unwrap(),
        build_scheme(Variant::Zeeman8, GAMMA_RB_D1, true).unwrap(),
    ]
}

fn drive(oc: f64, d1: f64, d2: f64, delta: f64, b: f64) -> DriveConfig {
    DriveConfig { omega_c: oc, one_photon_detuning: delta, delta1: d1, delta2: d2, b_field: b, ..Default::default() }
}

/// Ground-space projector onto the null space of the excited × ground
/// coupling block, from its SVD.
fn svd_dark_projector(scheme: &LevelScheme, h: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let g = scheme.ground();
    let e = scheme.excited();
    let c = DMatrix::from_fn(e.len(), g.len(), |i, j| h[(e[i], g[j])]);
    let scale = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    // Pad to a square matrix so the SVD yields the full right basis.
    let mut sq = DMatrix::zeros(g.len(), g.len());
    sq.view_mut((0, 0), (e.len().min(g.len()), g.len()))
        .copy_from(&c.rows(0, e.len().min(g.len())));
    let svd = sq.svd(false, true);
    let vt = svd.v_t.unwrap();
    let mut p = DMatrix::zeros(g.len(), g.len());
    for (k, s) in svd.singular_values.iter().enumerate() {
        if *s <= 1e-9 * scale {
            let v = vt.row(k).adjoint();
            p += &v * v.adjoint();
        }
    }
    p
}

#[test]
fn dark_states_match_svd_null_space() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for scheme in schemes().into_iter().take(2) {
        for _ in 0..20 {
            let d = drive(rng.random_range(0.5..30.0), 0.0, 0.0, 0.0, rng.random_range(0.0..0.3));
            let s1 = Complex64::from_polar(rng.random_range(0.01..5.0), rng.random_range(0.0..6.3));
            let s2 = Complex64::from_polar(rng.random_range(0.01..5.0), rng.random_range(0.0..6.3));
            let h = build_hamiltonian(&scheme, &d, (s1, s2)).unwrap().0;
            let oracle = svd_dark_projector(&scheme, &h);
            let ds = dark_states(&scheme, &d, (s1, s2)).unwrap();
            let g = scheme.ground();
            let mut ours = DMatrix::<Complex64>::zeros(g.len(), g.len());
            for b in &ds.basis {
                let v = DMatrix::from_fn(g.len(), 1, |i, _| b[g[i]]);
                ours += &v * v.adjoint();
            }
            let diff = (&ours - &oracle).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(diff < 1e-9, "{:?}: projector difference {diff}", scheme.variant);
        }
    }
}

#[test]
fn transitions_respect_selection_rules() {
    for scheme in schemes() {
        for t in &scheme.transitions {
            let dm = scheme.states[t.upper].m - scheme.states[t.lower].m;
            assert_eq!(Polarization::from_delta_m(dm), Some(t.polarization));
            assert!(!scheme.states[t.lower].excited && scheme.states[t.upper].excited);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hamiltonian_is_hermitian(
        which in 0usize..3,
        oc in 0.0..40.0f64,
        d1 in -20.0..20.0f64,
        d2 in -20.0..20.0f64,
        delta in -50.0..50.0f64,
        b in -1.0..1.0f64,
        r1 in 0.0..5.0f64, p1 in 0.0..6.3f64,
        r2 in 0.0..5.0f64, p2 in 0.0..6.3f64,
    ) {
        let scheme = &schemes()[which];
        let h = build_hamiltonian(
            scheme,
            &drive(oc, d1, d2, delta, b),
            (Complex64::from_polar(r1, p1), Complex64::from_polar(r2, p2)),
        ).unwrap();
        prop_assert!(h.hermiticity_error() <= 1e-12 * h.max_abs().max(f64::MIN_POSITIVE));
    }

    #[test]
    fn tripod_dark_subspace_is_two_dimensional(
        oc in 0.01..40.0f64,
        r1 in 0.01..10.0f64, p1 in 0.0..6.3f64,
        r2 in 0.01..10.0f64, p2 in 0.0..6.3f64,
        b in 0.0..0.5f64,
    ) {
        let scheme = build_scheme(Variant::Tripod4, GAMMA_RB_D1, false).unwrap();
        let sig = (Complex64::from_polar(r1, p1), Complex64::from_polar(r2, p2));
        let ds = dark_states(&scheme, &drive(oc, 0.0, 0.0, 0.0, b), sig).unwrap();
        prop_assert_eq!(ds.dimension(), 2);
        for v in &ds.basis {
            for e in scheme.excited() {
                prop_assert!(v[e].norm() <= 1e-10);
            }
        }
    }
}
