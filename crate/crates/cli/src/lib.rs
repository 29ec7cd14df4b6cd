//! Library surface of the command-line driver; the binary in `main.rs` is a
//! thin argument parser over these modules.

pub mod commands;
pub mod csv;
pub mod orbit_file;
pub mod svg;
pub mod verify;
