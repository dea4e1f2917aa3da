//! Elections, outcomes and the satisfaction function.

mod election;
pub mod io;

pub use election::{ElectionClass, Outcome, Suboutcome, TemporalElection};
