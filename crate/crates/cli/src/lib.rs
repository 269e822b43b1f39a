//! Command-line front end for the orbitope engine: configuration, a
//! JSON-lines result cache, report rendering and the regression suite.

pub mod cache;
pub mod commands;
pub mod config;
pub mod report;
pub mod suite;

pub use commands::{Engine, Which};
pub use config::{Format, RunConfig};
pub use report::Report;
