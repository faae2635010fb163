//! Command-line front end: argument parsing, renderers and generators.

pub mod app;
pub mod gen;
pub mod render;

pub use app::{execute, run, Cli, Command, Status};
