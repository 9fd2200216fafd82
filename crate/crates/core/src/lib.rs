//! Benchmark suite for minor-embedding heuristics on quantum-annealer
//! hardware graphs.
//!
//! The crate generates source-graph corpora, builds Chimera / Pegasus /
//! Zephyr hardware targets, runs embedding algorithms under a common
//! deadline-and-seed discipline, injects hardware faults, and aggregates
//! results into statistics and report tables. The `minorbench` binary
//! exposes the same operations as subcommands.

pub mod algorithms;
pub mod analysis;
pub mod cli;
pub mod embedding;
pub mod faults;
pub mod gen;
pub mod graph;
pub mod rng;
pub mod runner;
pub mod topology;
