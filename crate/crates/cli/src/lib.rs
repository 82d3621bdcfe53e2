//! Command-line front end for the `property_o` library.

pub mod app;
pub mod format;

pub use app::run;
pub use format::{parse_hypergraph, serialize, ParseError};
