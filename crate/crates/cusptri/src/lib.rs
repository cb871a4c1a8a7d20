//! File formats, JSON schemas and the command-line front end for `cusptri-core`.

pub mod cli;
pub mod format;
pub mod json;

pub use format::{parse_triangulation, serialize, ParseError, TriFile};
