//! FJR and FPJR (all strengths) and Droop-FJR.
//!
//! The guarantee of each group does not depend on the outcome, so the
//! checkers read the precomputed table of groups with a positive guarantee
//! and compare against the outcome's satisfaction. The witness is then
//! rebuilt for the first violating group.

use super::analysis::{Analysis, Guarantee, Profile};
use super::{AxiomId, CheckReport, Variant, Witness, Work};
use crate::error::Result;
use crate::model::Outcome;
use crate::sets::{RoundSet, VoterSet};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Bound {
    /// Some member must reach the guarantee.
    Member,
    /// The group as a whole must reach it.
    Group,
}

fn check_table(
    analysis: &Analysis<'_>,
    o: &Outcome,
    axiom: AxiomId,
    kind: Guarantee,
    bound: Bound,
) -> Result<CheckReport> {
    let e = analysis.election();
    let table = analysis.table(kind)?;
    let profile = Profile::new(e, o);
    let mut work = Work::default();
    for entry in table {
        work.groups += 1;
        let have = match bound {
            Bound::Member => profile.max_sat(entry.group),
            Bound::Group => profile.group_sat(entry.group),
        };
        if have < entry.value {
            let witness = certificate(analysis, entry.group, entry.value, kind, &mut work);
            return Ok(CheckReport::verdict(axiom, Some(witness), work));
        }
    }
    Ok(CheckReport::verdict(axiom, None, work))
}

/// The round sets attaining `value` and a deviation giving every member `value`.
fn certificate(analysis: &Analysis<'_>, group: VoterSet, value: u32, kind: Guarantee, work: &mut Work) -> Witness {
    let e = analysis.election();
    let first_attaining = |scope: RoundSet, k: usize| -> RoundSet {
        scope
            .subsets_of_size(k)
            .map(RoundSet::from_bits)
            .find(|&r| analysis.maxmin(group, r) == value)
            .expect("the guarantee is attained by some round set")
    };
    let (scope, rounds) = match kind {
        Guarantee::Strong | Guarantee::Weak => {
            let k = analysis.quota(group, e.ell()) as usize;
            (None, first_attaining(e.rounds(), k))
        }
        Guarantee::Standard | Guarantee::Droop => {
            let droop = kind == Guarantee::Droop;
            let t = e
                .rounds()
                .subsets()
                .map(RoundSet::from_bits)
                .find(|&t| analysis.mu(group, t, droop) == value)
                .expect("the guarantee is attained by some scope");
            (Some(t), first_attaining(t, analysis.share(group, t.len(), droop)))
        }
    };
    work.suboutcomes += 1;
    let deviation = analysis
        .reach(group, rounds, |_| value)
        .expect("the guarantee is attainable on its round set");
    Witness {
        scope,
        deviation: Some(deviation),
        ..Witness::group(group, rounds, value)
    }
}

/// wFJR, FJR or sFJR.
pub fn check_fjr_family(analysis: &Analysis<'_>, o: &Outcome, variant: Variant) -> Result<CheckReport> {
    let axiom = match variant {
        Variant::Weak => AxiomId::WFjr,
        Variant::Standard => AxiomId::Fjr,
        Variant::Strong => AxiomId::SFjr,
    };
    check_table(analysis, o, axiom, Guarantee::from_variant(variant), Bound::Member)
}

/// wFPJR, FPJR or sFPJR.
pub fn check_fpjr_family(analysis: &Analysis<'_>, o: &Outcome, variant: Variant) -> Result<CheckReport> {
    let axiom = match variant {
        Variant::Weak => AxiomId::WFpjr,
        Variant::Standard => AxiomId::Fpjr,
        Variant::Strong => AxiomId::SFpjr,
    };
    check_table(analysis, o, axiom, Guarantee::from_variant(variant), Bound::Group)
}

pub fn check_droop_fjr(analysis: &Analysis<'_>, o: &Outcome) -> Result<CheckReport> {
    check_table(analysis, o, AxiomId::DroopFjr, Guarantee::Droop, Bound::Member)
}
