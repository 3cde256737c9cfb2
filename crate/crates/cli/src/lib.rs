//! Library side of the esms command-line tool.

pub mod app;
pub mod config;
pub mod context;
pub mod report;
pub mod suites;

pub use app::run;
