// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use polariton_core::atom::{build_scheme, DriveConfig, Variant};
use polariton_core::exec::Execution;
use polariton_core::propagation::{propagate, step_rate, Grid, MediumParams, PropagationOptions};
use polariton_core::protocol::PulseSchedule;
use polariton_core::units::GAMMA_RB_D1;

fn bench_propagate(c: &mut Criterion) {
    let scheme = build_scheme(Variant::Tripod4, GAMMA_RB_D1, false).unwrap();
    let medium = MediumParams::from_optical_depth(40.0, GAMMA_RB_D1, 50.0, 0.0);
    let drive = DriveConfig { omega_c: 12.0, ..Default::default() };
    let sched = PulseSchedule::gaussian_pair(4.0, 1.0, 0.05, 0.05);
    let grid = Grid::resolving(128, 50.0, 8.0, step_rate(&scheme, &drive, &sched).unwrap()).unwrap();

    let mut group = c.benchmark_group("propagate_nz128");
    group.sample_size(10);
    for (name, execution) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
        let opts = PropagationOptions { execution, ..Default::default() };
        group.bench_function(name, |b| {
            b.iter(|| propagate(&scheme, &medium, &drive, &sched, black_box(&grid), &opts).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_propagate);
criterion_main!(benches);
