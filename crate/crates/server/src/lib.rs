//! Session server and command-line tools for the proof engine.

pub mod api;
pub mod cli;
pub mod session;
