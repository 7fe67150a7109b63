//! Command-line front end: germ invariants, semigroups, bound reports,
//! seeded sweeps and the self-test suite.

pub mod cli;
pub mod corpus;
pub mod oracle;
pub mod report;
pub mod selftest;

pub use cli::{run, run_with};
