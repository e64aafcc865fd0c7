//! Textual DSL and machine-readable serialization for link descriptions,
//! plus report rendering.

mod json;
mod lexer;
mod parser;
mod printer;
mod render;

pub use json::{from_json, to_json, JsonError, SCHEMA_VERSION};
pub use lexer::Span;
pub use parser::{parse, DslError};
pub use printer::to_dsl;
pub use render::{render_report, ReportFormat};
