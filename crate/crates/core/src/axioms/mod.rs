//! Axiom checkers with violation witnesses.
//!
//! [`check`] dispatches on an [`AxiomId`]. Every checker returns the first
//! violation in canonical order: groups by ascending bitmask, then round sets
//! by ascending bitmask, then suboutcomes lexicographically by candidate
//! index. The EJR+ family is the exception; it reports the maximal group
//! found by the polynomial scan over `(round, candidate, level)` triples.

pub mod analysis;
mod core_stability;
mod ejr_plus;
mod fjr;
mod jr;
pub mod lattice;
pub mod replay;

pub use analysis::{Analysis, Guarantee, Limits, Profile};
pub use core_stability::check_core_family;
pub use ejr_plus::check_ejr_plus;
pub use fjr::{check_droop_fjr, check_fjr_family, check_fpjr_family};
pub use jr::{check_droop_ejr, check_ejr_family, check_jr_family, check_pjr_family};

use crate::error::{Error, Result};
use crate::model::{Outcome, Suboutcome, TemporalElection};
use crate::sets::{RoundSet, VoterSet};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Weak,
    Standard,
    Strong,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Jr,
    Pjr,
    Ejr,
    EjrPlus,
    Fjr,
    Fpjr,
    Core,
    DroopEjr,
    DroopFjr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    WJr,
    Jr,
    SJr,
    WPjr,
    Pjr,
    SPjr,
    WEjr,
    Ejr,
    SEjr,
    WEjrPlus,
    EjrPlus,
    SEjrPlus,
    WFjr,
    Fjr,
    SFjr,
    WFpjr,
    Fpjr,
    SFpjr,
    WCore,
    Core,
    SCore,
    DroopEjr,
    DroopFjr,
}

impl AxiomId {
    pub const ALL: [AxiomId; 23] = [
        AxiomId::WJr,
        AxiomId::Jr,
        AxiomId::SJr,
        AxiomId::WPjr,
        AxiomId::Pjr,
        AxiomId::SPjr,
        AxiomId::WEjr,
        AxiomId::Ejr,
        AxiomId::SEjr,
        AxiomId::WEjrPlus,
        AxiomId::EjrPlus,
        AxiomId::SEjrPlus,
        AxiomId::WFjr,
        AxiomId::Fjr,
        AxiomId::SFjr,
        AxiomId::WFpjr,
        AxiomId::Fpjr,
        AxiomId::SFpjr,
        AxiomId::WCore,
        AxiomId::Core,
        AxiomId::SCore,
        AxiomId::DroopEjr,
        AxiomId::DroopFjr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomId::WJr => "wJR",
            AxiomId::Jr => "JR",
            AxiomId::SJr => "sJR",
            AxiomId::WPjr => "wPJR",
            AxiomId::Pjr => "PJR",
            AxiomId::SPjr => "sPJR",
            AxiomId::WEjr => "wEJR",
            AxiomId::Ejr => "EJR",
            AxiomId::SEjr => "sEJR",
            AxiomId::WEjrPlus => "wEJR+",
            AxiomId::EjrPlus => "EJR+",
            AxiomId::SEjrPlus => "sEJR+",
            AxiomId::WFjr => "wFJR",
            AxiomId::Fjr => "FJR",
            AxiomId::SFjr => "sFJR",
            AxiomId::WFpjr => "wFPJR",
            AxiomId::Fpjr => "FPJR",
            AxiomId::SFpjr => "sFPJR",
            AxiomId::WCore => "wCore",
            AxiomId::Core => "Core",
            AxiomId::SCore => "sCore",
            AxiomId::DroopEjr => "Droop-EJR",
            AxiomId::DroopFjr => "Droop-FJR",
        }
    }

    pub fn family(self) -> Family {
        use AxiomId::*;
        match self {
            WJr | Jr | SJr => Family::Jr,
            WPjr | Pjr | SPjr => Family::Pjr,
            WEjr | Ejr | SEjr => Family::Ejr,
            WEjrPlus | EjrPlus | SEjrPlus => Family::EjrPlus,
            WFjr | Fjr | SFjr => Family::Fjr,
            WFpjr | Fpjr | SFpjr => Family::Fpjr,
            WCore | Core | SCore => Family::Core,
            DroopEjr => Family::DroopEjr,
            DroopFjr => Family::DroopFjr,
        }
    }

    /// The Droop axioms count as standard.
    pub fn variant(self) -> Variant {
        use AxiomId::*;
        match self {
            WJr | WPjr | WEjr | WEjrPlus | WFjr | WFpjr | WCore => Variant::Weak,
            SJr | SPjr | SEjr | SEjrPlus | SFjr | SFpjr | SCore => Variant::Strong,
            _ => Variant::Standard,
        }
    }

    /// Whether the checker runs in polynomial time.
    pub fn is_polynomial(self) -> bool {
        matches!(self, AxiomId::SJr) || self.family() == Family::EjrPlus
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownAxiom(pub String);

impl fmt::Display for UnknownAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown axiom `{}`", self.0)
    }
}

impl std::error::Error for UnknownAxiom {}

impl FromStr for AxiomId {
    type Err = UnknownAxiom;

    /// Case-insensitive; `plus` is accepted in place of `+`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace("plus", "+");
        AxiomId::ALL
            .into_iter()
            .find(|a| a.name().to_ascii_lowercase() == key)
            .ok_or_else(|| UnknownAxiom(s.to_string()))
    }
}

impl Serialize for AxiomId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for AxiomId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A certificate that an outcome violates an axiom.
///
/// `rounds` is the round set the violation rests on: the agreement rounds for
/// the JR families, the cohesion rounds for EJR+, and the round set `R` of
/// the deviation for the FJR, FPJR and core families. `scope` is the outer
/// round set `T` where the definition has one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub group: VoterSet,
    pub rounds: RoundSet,
    pub scope: Option<RoundSet>,
    pub deviation: Option<Suboutcome>,
    pub threshold: u32,
    /// `(sigma, tau)` for the EJR+ family.
    pub cohesion: Option<(u32, u32)>,
    /// `(round, candidate)`, 0-based, for the EJR+ family.
    pub pivot: Option<(usize, usize)>,
}

impl Witness {
    pub(crate) fn group(group: VoterSet, rounds: RoundSet, threshold: u32) -> Self {
        Self {
            group,
            rounds,
            scope: None,
            deviation: None,
            threshold,
            cohesion: None,
            pivot: None,
        }
    }
}

/// Search effort spent by a check.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Work {
    pub groups: u64,
    pub suboutcomes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub axiom: AxiomId,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub work: Work,
}

impl CheckReport {
    pub(crate) fn verdict(axiom: AxiomId, witness: Option<Witness>, work: Work) -> Self {
        Self {
            axiom,
            holds: witness.is_none(),
            witness,
            work,
        }
    }
}

/// Checks `axiom` with default limits.
pub fn check(e: &TemporalElection, o: &Outcome, axiom: AxiomId) -> Result<CheckReport> {
    check_with(&Analysis::new(e, Limits::default()), o, axiom)
}

/// Checks `axiom` reusing the memo tables of `analysis`.
pub fn check_with(analysis: &Analysis<'_>, o: &Outcome, axiom: AxiomId) -> Result<CheckReport> {
    analysis.election().validate_outcome(o)?;
    let variant = axiom.variant();
    match axiom.family() {
        Family::Jr => check_jr_family(analysis, o, variant),
        Family::Pjr => check_pjr_family(analysis, o, variant),
        Family::Ejr => check_ejr_family(analysis, o, variant),
        Family::EjrPlus => check_ejr_plus(analysis.election(), o, variant),
        Family::Fjr => check_fjr_family(analysis, o, variant),
        Family::Fpjr => check_fpjr_family(analysis, o, variant),
        Family::Core => check_core_family(analysis, o, variant),
        Family::DroopEjr => check_droop_ejr(analysis, o),
        Family::DroopFjr => check_droop_fjr(analysis, o),
    }
}

/// Rough per-outcome cost of a check once the guarantee tables exist.
pub fn check_work(analysis: &Analysis<'_>, axiom: AxiomId) -> Result<u128> {
    let e = analysis.election();
    let poly = (e.m() * e.ell() * e.ell() * e.n()).max(1) as u128;
    Ok(match axiom.family() {
        Family::EjrPlus => poly,
        Family::Jr if axiom == AxiomId::SJr => poly,
        Family::Jr | Family::Pjr | Family::Ejr | Family::DroopEjr => (1u128 << e.n()).saturating_mul(e.ell() as u128),
        Family::Fjr | Family::Fpjr | Family::DroopFjr => {
            let kind = match axiom.family() {
                Family::DroopFjr => Guarantee::Droop,
                _ => Guarantee::from_variant(axiom.variant()),
            };
            analysis.table(kind)?.len().max(1) as u128 * e.n() as u128
        }
        Family::Core => {
            let live = match axiom.variant() {
                Variant::Standard => analysis.core_pairs()?.len(),
                v => analysis.table(Guarantee::from_variant(v))?.len(),
            };
            (live.max(1) as u128) * (1u128 << e.ell().min(64))
        }
    })
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
