//! Brute-force search and randomized probing.

pub mod bruteforce;
mod enumerate;
mod generate;
mod probe;

pub use enumerate::{check_all, exists_satisfying, search_work, ForAllReport, OutcomeSpace};
pub use generate::{Generator, GeneratorParams};
pub use probe::{probe_implication, probe_lattice, ArrowTally, Counterexample, LatticeReport, ProbeReport};
