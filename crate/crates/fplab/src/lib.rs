//! Experiment harness for `fplab-core`: named presets, a small run-config
//! format, trace export and a verification suite.

pub mod algorithm;
pub mod config;
pub mod error;
pub mod export;
pub mod operators;
pub mod presets;
pub mod runner;
pub mod suite;

pub use algorithm::Algorithm;
pub use config::{parse_config, RunConfig};
pub use error::{ConfigError, HarnessError};
pub use export::{export_trace, TraceFormat, TraceMeta, TraceRow};
pub use presets::{preset, Cell, Overrides, Preset, PRESET_NAMES};
pub use runner::{run_config, run_preset, CellOutcome};
pub use suite::{default_zoo, verify_suite, NamedCheck, SuiteOutcome, ZooEntry};

pub const DEFAULT_SEED: u64 = 42;
