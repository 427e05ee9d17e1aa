//! Command implementations and the JSON session service behind the `wcox` binary.

pub mod commands;
pub mod input;
pub mod service;
pub mod session;

pub use commands::{Failure, Format, Report};
