//! File formats, random and exhaustive tree generation, the invariant
//! suite and the `fwdtree` command line, on top of `fwdtree-core`.

pub mod check;
pub mod cli;
pub mod generate;
pub mod ingest;
pub mod parallel;
pub mod render;

pub use cli::run;
