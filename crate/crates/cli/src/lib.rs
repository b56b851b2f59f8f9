//! Command-line driver for the tower engine: a small script language, the
//! a-table, and the generator/congruence verifiers, all emitting
//! deterministic JSON reports.

pub mod commands;
pub mod dsl;
pub mod eval;
pub mod report;
