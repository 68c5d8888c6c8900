//! Test laboratory for the chain-geometry library: seed-deterministic
//! instance generators, independent brute-force oracles, and the property
//! suites that turn every library invariant into an executable batch.
//!
//! Oracles live in their own source tree and share no code with the
//! production spanning-tree and merge-tree algorithms they certify.

pub mod gen;
pub mod oracle;
pub mod suite;

pub use gen::{gen_members, gen_model, gen_space, gen_space_mixed, gen_subset, GeneratorConfig, SpaceKind};
pub use oracle::{
    oracle_chain_ball, oracle_chain_component, oracle_kcenter, oracle_minimax,
    oracle_minimax_paths, OracleError,
};
pub use suite::{default_trials, run_suite, Failure, SuiteReport, UnknownSuite, SUITE_NAMES};
