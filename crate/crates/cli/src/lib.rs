//! Command-line surface for `commcrit`: the builtin corpus, group
//! descriptor files, batch drivers and run reports.

pub mod commands;
pub mod corpus;
pub mod descriptor;
pub mod error;
pub mod report;

pub use commands::{run, run_on, Command, KRange, RunOptions};
pub use corpus::{builtin_descriptors, builtin_ids, describe_builtin, corpus_hash, select, Selection};
pub use descriptor::{load, parse_descriptor, read_descriptor, write_descriptor, GroupDescriptor, LoadedGroup, Tag};
pub use error::CliError;
pub use report::{Entry, GroupResult, RunReport};
