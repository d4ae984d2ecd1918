// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Configuration files, result tables and subcommand orchestration.

mod config;
mod run;
mod table;

pub use config::{
    parse_config, parse_config_with, DriveSection, GridSection, MediumSection, OutputSection, Preset, RunConfig,
    ScheduleSection, SchemeSection, SweepSection,
};
pub use run::{run, RunOptions, RunSummary, Subcommand};
pub use table::{num, Table};
