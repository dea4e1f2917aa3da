//! Voting rules with proportionality guarantees.

mod gcr;
mod lspav;
mod sdr;

pub use gcr::{gcr, gcr_with, GcrGroup, GcrTrace};
pub use lspav::{
    default_epsilon, default_initial, harmonic_score, is_local_optimum, lspav, swap_bound, swap_gain, LsPavConfig,
    LsPavTrace, Swap,
};
pub use sdr::{dictator, sdr, SdrTrace};

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleName {
    Lspav,
    Gcr,
    Sdr,
}

impl FromStr for RuleName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lspav" => Ok(RuleName::Lspav),
            "gcr" => Ok(RuleName::Gcr),
            "sdr" => Ok(RuleName::Sdr),
            _ => Err(format!("unknown rule `{s}` (expected lspav, gcr or sdr)")),
        }
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleName::Lspav => "lspav",
            RuleName::Gcr => "gcr",
            RuleName::Sdr => "sdr",
        })
    }
}
