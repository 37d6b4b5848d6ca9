//! Command-line front end, file formats and the reproduction suite for
//! generic Cayley graphs (see `gcm-core` for the algorithms).

pub mod cli;
pub mod error;
pub mod fixture;
pub mod output;
pub mod table;
pub mod verify;

pub use error::{CliError, CliResult};
