//! Library surface of the `envrad` binary: the session-file model and the
//! command runner, split out so integration tests can exercise parsing,
//! rendering and execution without spawning a process.

pub mod commands;
pub mod session;
