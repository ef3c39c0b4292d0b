//! Command-line front end for `foliate-core`: the form parser, the built-in
//! corpus, the JSON tree document and DOT export, and the subcommands.

pub mod cases;
pub mod cli;
pub mod commands;
pub mod document;
pub mod error;
pub mod parse;
pub mod suite;
