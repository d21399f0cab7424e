//! Config-driven frontend: parse a flat TOML file, run one of the library's
//! computations, write a CSV with provenance comments.

pub mod config;
pub mod error;
pub mod run;
pub mod table;

pub use config::{parse_config, parse_config_for, Command, RunConfig, Value};
pub use error::{CliError, Result};
pub use run::{run, Outcome};
pub use table::{Cell, CsvTable};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book {}
