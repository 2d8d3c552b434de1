//! Command-line front end for bohmlab: strict TOML configs, scenario runs and
//! plain-text outputs (CSV tables, raw snapshots, checksummed manifest).

pub mod config;
pub mod error;
pub mod fields;
pub mod output;
pub mod run;

pub use config::{config_hash, parse_config, parse_config_str, write_config};
pub use error::{CliError, ErrorRecord};
pub use fields::field_report;
pub use output::{export_plot_series, format_value, verify_manifest, RunManifest};
pub use run::{execute, run, Overrides, RunSummary, Subcommand, EXIT_ASSERTION_FAILED, EXIT_ERROR, EXIT_PASS};
