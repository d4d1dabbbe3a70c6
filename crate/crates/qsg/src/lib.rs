//! Text format, Graphviz and JSON renderings, and the command-line front end
//! for `qsg-core`.

pub mod cli;
pub mod dot;
pub mod dsl;
pub mod report;

pub use dsl::{parse, serialize, DslError, SourceSpan};
