//! Definition files, command dispatch and reports.

pub mod corpus;
pub mod document;
pub mod run;

pub use document::{parse_definition, serialize_definition, DefinitionDocument, Kind, Side};
pub use run::{run, Command, Options, Report, DEFAULT_MAX_WEIGHT};
