//! Document format and command dispatch for the `gfd` tool.

pub mod doc;
pub mod error;
pub mod render;
pub mod run;
