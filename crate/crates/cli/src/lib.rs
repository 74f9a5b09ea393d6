//! Generators, file formats and report plumbing for the `incidence` binary.

pub mod gen;
pub mod io;
pub mod report;
