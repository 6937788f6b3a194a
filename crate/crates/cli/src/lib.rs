//! Library surface of the command-line tool: report structures, text
//! rendering, and the built-in table generators. The binary in `main.rs`
//! is a thin argument-parsing layer over these.

pub mod report;
pub mod tables;
