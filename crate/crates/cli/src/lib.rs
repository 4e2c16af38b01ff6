//! Session-file parsing and report formatting for the `pfh` binary.

pub mod session;
