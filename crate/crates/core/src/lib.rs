//! Proportionality axioms for temporal approval elections.
//!
//! A temporal election asks `n` voters to approve candidates in each of
//! `ell` rounds, and an outcome picks one candidate per round. This crate
//! decides 23 proportionality axioms with replayable violation witnesses,
//! implements three rules with proportionality guarantees (local-search PAV,
//! the Greedy Cohesive Rule and Serial Dictatorship), and ships brute-force
//! oracles plus a corpus of separating elections.
//!
//! ```
//! use temporal_jr::model::io::parse_picks;
//! use temporal_jr::rules::{lspav, LsPavConfig};
//! use temporal_jr::{check, AxiomId};
//!
//! let e = temporal_jr::corpus::entry("E1").unwrap().election;
//! let o = parse_picks("a,a,a,a", &e)?;
//! assert!(!check(&e, &o, AxiomId::Jr)?.holds);
//!
//! let (out, _trace) = lspav(&e, &LsPavConfig::guaranteed(&e))?;
//! assert!(check(&e, &out, AxiomId::EjrPlus)?.holds);
//! # Ok::<(), temporal_jr::Error>(())
//! ```

pub mod axioms;
pub mod corpus;
pub mod error;
pub mod model;
pub mod oracle;
pub mod report;
pub mod rules;
pub mod scalar;
pub mod sets;

pub use axioms::{check, check_with, AxiomId, CheckReport, Family, Limits, Variant, Witness};
pub use error::{Error, Result};
pub use model::{ElectionClass, Outcome, Suboutcome, TemporalElection};
pub use scalar::Scalar;
pub use sets::{CandidateSet, RoundSet, VoterSet};

/// Exact rational used for harmonic scores and lsPAV thresholds.
pub type Rational = num_rational::Ratio<i128>;

/// Floating-point score, for display and quick experiments only.
pub type FloatScore = f64;
