// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

/// Clebsch–Gordan coefficient ⟨j1 m1; j2 m2 | j m⟩ for integer angular
/// momenta (Racah's closed form, Condon–Shortley phase).
pub fn clebsch_gordan(j1: i32, m1: i32, j2: i32, m2: i32, j: i32, m: i32) -> f64 {
    if m1 + m2 != m
        || m1.abs() > j1
        || m2.abs() > j2
        || m.abs() > j
        || j < (j1 - j2).abs()
        || j > j1 + j2
    {
        return 0.0;
    }
    let f = |n: i32| -> f64 { (1..=n).map(f64::from).product() };
    let prefactor = ((2 * j + 1) as f64 * f(j + j1 - j2) * f(j - j1 + j2) * f(j1 + j2 - j)
        / f(j1 + j2 + j + 1))
    .sqrt()
        * (f(j + m) * f(j - m) * f(j1 - m1) * f(j1 + m1) * f(j2 - m2) * f(j2 + m2)).sqrt();

    let k_min = 0.max(j2 - j - m1).max(j1 - j + m2);
    let k_max = (j1 + j2 - j).min(j1 - m1).min(j2 + m2);
    let mut sum = 0.0;
    for k in k_min..=k_max {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign
            / (f(k)
                * f(j1 + j2 - j - k)
                * f(j1 - m1 - k)
                * f(j2 + m2 - k)
                * f(j - j2 + m1 + k)
                * f(j - j1 - m2 + k));
    }
    prefactor * sum
}
