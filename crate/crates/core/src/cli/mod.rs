//! Command-line front end: configuration parsing, experiment dispatch and
//! CSV / plot-script emission.

pub mod config;
pub mod format;
pub mod plot;
mod run;

pub use config::{parse_config, serialize_config, RunConfig};
pub use plot::emit_plot_script;
pub use run::{exit_code, main_with_args, run_command, Command};
