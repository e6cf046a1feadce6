//! Table serialization, the on-disk cache and the verification suites behind
//! the `hzlag` binary.

pub mod cache;
pub mod suites;
pub mod table;
