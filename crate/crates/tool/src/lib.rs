//! File formats and command dispatch for the `minspace` command-line tool.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod exec;
pub mod output;
pub mod run;
pub mod spec;

pub use config::{Command, RunConfig};
pub use exec::RayonExecutor;
pub use output::{Format, Table};
pub use run::{run, Outcome, RunError};
pub use spec::{parse_symbol, parse_symbol_str, ParseError, SymbolSpec};
