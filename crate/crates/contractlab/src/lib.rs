//! Std companion of `contractlab-core`: JSON and CSV formats, rayon-backed
//! oracle scans, horizon sweeps and the `contractlab` command line.

pub mod cli;
pub mod io;
pub mod parallel;
pub mod sweep;
