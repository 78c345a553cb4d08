//! Command-line front end: the document format, report rendering, commands
//! and the randomized suites.

pub mod commands;
pub mod document;
pub mod report;
pub mod suites;

pub use commands::{run, run_on_text, Cli, Command, Flags};
pub use document::{parse, DocError, Document};
pub use report::RunReport;
