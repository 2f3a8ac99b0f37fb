//! Front-end plumbing for the `supersat` binary: graph arguments, run
//! manifests and the named verification suites.

pub mod manifest;
pub mod spec;
pub mod suites;
