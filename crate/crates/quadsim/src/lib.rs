//! Batch scenario runner around [`quadsim_core`]: JSON scenario files,
//! built-in presets, trajectory CSVs, and run summaries.

pub mod runner;
pub mod scenario;

pub use runner::{run, write_trajectory_csv, RunError, RunSummary, CSV_HEADER};
pub use scenario::{
    load_scenario, parse_scenario, MethodName, PresetName, Scenario, ScenarioError, ScenarioFile,
};
