//! Library side of the `wforge` command-line tool: input parsing,
//! verification/comparison logic, and report types. The binary in
//! `main.rs` is a thin clap wrapper over this.

pub mod commands;
pub mod input;
pub mod report;

/// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input
/// error. Stable for CI use.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
