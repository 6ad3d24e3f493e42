//! Library half of the `ncf` command-line tool: run reports, verification
//! suites, and the command implementations. The binary in `main.rs` is a
//! thin argument-parsing shell over [`commands`].

pub mod commands;
pub mod report;
pub mod suites;
