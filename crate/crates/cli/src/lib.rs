//! Command-line front end for `gf2dav-core`: single-modulus queries and the
//! exhaustive verification harness.
//!
//! Ring elements are written multiplicatively; the identity is `1`.

pub mod cache;
pub mod commands;
pub mod error;
pub mod report;
pub mod suites;
pub mod verify;

pub use error::CliError;
