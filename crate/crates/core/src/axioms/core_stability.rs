//! sCore, Core and wCore.
//!
//! A deviation on `R` beats the outcome when every member of `S` strictly
//! gains, i.e. member `i` gets at least `sat_i(o) + 1` on `R`. That needs
//! `maxmin(S, R) > min_i sat_i(o)`, so only groups (or group/scope pairs)
//! whose guarantee tops the least satisfied member are searched.

use super::analysis::{Analysis, Guarantee, Profile};
use super::{AxiomId, CheckReport, Variant, Witness, Work};
use crate::error::Result;
use crate::model::{Outcome, Suboutcome};
use crate::sets::{RoundSet, VoterSet};

struct Deviations<'a, 'e> {
    analysis: &'a Analysis<'e>,
    profile: Profile,
    work: Work,
}

impl Deviations<'_, '_> {
    /// Lex-first deviation on `rounds` that every member of `group` prefers.
    fn on(&mut self, group: VoterSet, rounds: RoundSet) -> Option<Suboutcome> {
        let floor = self.profile.min_sat(group);
        if self.analysis.maxmin(group, rounds) <= floor {
            return None;
        }
        self.work.suboutcomes += 1;
        let sat = &self.profile.sat;
        self.analysis.reach(group, rounds, |i| sat[i] + 1)
    }

    /// First `R` of size `k` inside `scope` admitting a deviation.
    fn any(&mut self, group: VoterSet, scope: RoundSet, k: usize) -> Option<(RoundSet, Suboutcome)> {
        scope
            .subsets_of_size(k)
            .map(RoundSet::from_bits)
            .find_map(|r| self.on(group, r).map(|d| (r, d)))
    }

    /// A deviation on every `R` of size `k` inside `scope`; returns the first.
    fn all(&mut self, group: VoterSet, scope: RoundSet, k: usize) -> Option<(RoundSet, Suboutcome)> {
        let mut first = None;
        for r in scope.subsets_of_size(k).map(RoundSet::from_bits) {
            let d = self.on(group, r)?;
            first.get_or_insert((r, d));
        }
        first
    }

    /// Every member could gain on some `k` rounds.
    fn can_gain(&self, group: VoterSet, k: usize) -> bool {
        (self.profile.max_sat(group) as usize) < k
    }
}

pub fn check_core_family(analysis: &Analysis<'_>, o: &Outcome, variant: Variant) -> Result<CheckReport> {
    let e = analysis.election();
    let axiom = match variant {
        Variant::Weak => AxiomId::WCore,
        Variant::Standard => AxiomId::Core,
        Variant::Strong => AxiomId::SCore,
    };
    let mut dev = Deviations {
        analysis,
        profile: Profile::new(e, o),
        work: Work::default(),
    };
    let found = match variant {
        Variant::Strong | Variant::Weak => {
            let table = analysis.table(Guarantee::from_variant(variant))?;
            table.iter().find_map(|entry| {
                dev.work.groups += 1;
                let group = entry.group;
                let k = analysis.quota(group, e.ell()) as usize;
                if entry.value <= dev.profile.min_sat(group) || !dev.can_gain(group, k) {
                    return None;
                }
                let hit = match variant {
                    Variant::Strong => dev.any(group, e.rounds(), k),
                    _ => dev.all(group, e.rounds(), k),
                };
                hit.map(|(r, d)| (group, None, r, d, k))
            })
        }
        Variant::Standard => {
            let pairs = analysis.core_pairs()?;
            pairs.iter().find_map(|p| {
                dev.work.groups += 1;
                let k = analysis.share(p.group, p.scope.len(), false);
                if p.value <= dev.profile.min_sat(p.group) || !dev.can_gain(p.group, k) {
                    return None;
                }
                dev.all(p.group, p.scope, k)
                    .map(|(r, d)| (p.group, Some(p.scope), r, d, k))
            })
        }
    };
    let witness = found.map(|(group, scope, rounds, deviation, k)| Witness {
        scope,
        deviation: Some(deviation),
        ..Witness::group(group, rounds, k as u32)
    });
    Ok(CheckReport::verdict(axiom, witness, dev.work))
}
