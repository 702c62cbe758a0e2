//! Scenario files, spillover sweeps and the named figure experiments.

pub mod experiments;
pub mod scenario;
pub mod sweep;

pub use experiments::{experiment_scenarios, run_named_experiment, ExperimentRun, EXPERIMENTS};
pub use scenario::{emit_scenario, parse_scenario, GridSpec, NetworkSpec, RegulationSpec, Scenario, Spacing, ValueSpec};
pub use sweep::{emit_csv, parse_csv, run_sweep, sweep_row, SweepRow, CSV_HEADER};
