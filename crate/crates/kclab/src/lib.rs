//! File formats, parallel drivers and the command-line front end for
//! [`kclab_core`].

pub mod cli;
pub mod format;
pub mod parallel;

pub use kclab_core as core;
