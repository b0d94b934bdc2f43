//! One module per subcommand. Each exposes a `cmd_*` entry point returning
//! a [`Report`](crate::report::Report).

pub mod confidence;
pub mod goe;
pub mod ratio;
pub mod simulate;
pub mod sweep;
pub mod tables;
