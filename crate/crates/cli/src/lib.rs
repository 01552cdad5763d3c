//! Document language and command dispatch for the modelbench tools.
pub mod ast;
pub mod build;
pub mod cli;
pub mod commands;
pub mod parse;
pub mod report;
pub mod suite;
pub use ast::{print, Document};
pub use parse::{parse, ParseError};
