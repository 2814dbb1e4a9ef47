//! Command-line front end for `sl3chars-core`.

pub mod commands;
pub mod format;

pub use commands::{run, Cli, Command};
pub use format::{parse_tuple, write_tuple, AnyTuple, CertificateRecord, FormatError, TextScalar};
