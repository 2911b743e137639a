//! Library side of the `wedgeconf` command-line tool: rendering and the
//! acceptance checks run by `selftest`.

pub mod checks;
pub mod render;
