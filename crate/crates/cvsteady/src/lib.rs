//! Sweep runner, CSV output and presets on top of [`cvsteady_core`].

pub mod config;
pub mod output;
pub mod presets;
pub mod sweep;

pub use config::{parse_config, serialize_config, ConfigError, SweepConfig};
pub use output::{emit_csv, write_csv};
pub use presets::{preset, PRESET_NAMES};
pub use sweep::{run_sweep, GridResult, Row};
