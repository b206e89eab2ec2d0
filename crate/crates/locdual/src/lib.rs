//! Command-line front end for `locdual-core`: the polynomial grammar, request
//! parsing, JSON and plain-text output, and the exported `eta_psi` tree.

pub mod error;
pub mod parse;
pub mod render;
pub mod request;
pub mod run;
pub mod samples;
pub mod tree;

pub use error::CliError;
pub use parse::{parse_polynomial, parse_section, ParseError};
pub use request::{Command, OutputFormat, Request};
pub use run::{run, run_argv, Response, Status};
