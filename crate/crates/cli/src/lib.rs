//! Command-line front end: JSON input and output, commands and the
//! built-in verification suites.

pub mod commands;
pub mod corpus;
pub mod io;
pub mod verify;
