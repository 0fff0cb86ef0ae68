//! Support code for the `extlab` command-line tool: graph family specs,
//! run manifests and the verification suites behind `verify-paper`.

pub mod family;
pub mod manifest;
pub mod suite;

/// Exit status: the checked property holds.
pub const EXIT_AFFIRM: i32 = 0;
/// Exit status: the checked property fails.
pub const EXIT_REFUTE: i32 = 1;
/// Exit status: bad arguments or input.
pub const EXIT_USAGE: i32 = 2;
/// Exit status: the enumeration budget ran out.
pub const EXIT_BUDGET: i32 = 3;

/// Matching-oracle calls allowed without `--force`.
pub const DEFAULT_BUDGET: u64 = 10_000_000;
