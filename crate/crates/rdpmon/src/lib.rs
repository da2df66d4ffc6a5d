//! Command-line front end for `rdpmon-core`: a polynomial parser, job
//! specifications, the analyses behind each subcommand and their JSON
//! report documents.

pub mod error;
pub mod job;
pub mod parse;
pub mod report;
pub mod run;
pub mod text;

pub use error::CliError;
pub use job::{Analysis, Grid, JobSpec, Model};
pub use parse::{parse_poly, ParseError};

/// JSON schema for every document the CLI writes.
pub const SCHEMA: &str = include_str!("../schema/report.schema.json");
