//! Greedy Cohesive Rule.
//!
//! Stage 1 partitions the voters: repeatedly take the remaining group with
//! the highest FJR demand `max_T mu_S(T)` (larger groups win ties, then the
//! lower bitmask) together with a scope `T` attaining it (smaller scopes win
//! ties, then the lower bitmask). Stage 2 serves the groups by ascending
//! scope size, each claiming its proportional share of still-free rounds
//! inside its scope and filling them with a max-min suboutcome.

use crate::axioms::{Analysis, Guarantee, Limits};
use crate::error::Result;
use crate::model::{Outcome, Suboutcome, TemporalElection};
use crate::sets::{RoundSet, VoterSet};
use rayon::prelude::*;

/// Candidate used for rounds no group claims.
pub const FILLER: usize = 0;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcrGroup {
    pub group: VoterSet,
    pub scope: RoundSet,
    /// `mu` of the group on its scope.
    pub value: u32,
    /// Rounds still free inside the scope when the group was served.
    pub available: RoundSet,
    /// The rounds the group claimed.
    pub rounds: RoundSet,
    pub assignment: Suboutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcrTrace {
    /// Groups in creation order.
    pub groups: Vec<GcrGroup>,
    /// Creation indices in service order.
    pub order: Vec<usize>,
}

impl GcrTrace {
    /// Re-applies the assignments to the all-filler outcome.
    pub fn replay(&self, ell: usize) -> Outcome {
        let mut o = Outcome::constant(FILLER, ell);
        for &k in &self.order {
            for (r, c) in self.groups[k].assignment.iter() {
                o.set(r, c);
            }
        }
        o
    }

    /// Checks that the groups partition the voters, that claimed rounds are
    /// disjoint, and that every group found its full share free.
    pub fn verify(&self, e: &TemporalElection) -> std::result::Result<(), String> {
        let mut covered = VoterSet::EMPTY;
        for g in &self.groups {
            if g.group.is_empty() {
                return Err("empty group in the partition".into());
            }
            if !g.group.intersection(covered).is_empty() {
                return Err(format!("group {} overlaps an earlier group", g.group));
            }
            covered = covered.union(g.group);
        }
        if covered != e.voters() {
            return Err(format!("groups cover {covered}, not every voter"));
        }
        let mut sorted = self.order.clone();
        sorted.sort_unstable();
        if sorted != (0..self.groups.len()).collect::<Vec<_>>() {
            return Err("service order is not a permutation of the groups".into());
        }
        let mut taken = RoundSet::EMPTY;
        let mut last = 0;
        for &k in &self.order {
            let g = &self.groups[k];
            if g.scope.len() < last {
                return Err("groups served out of scope-size order".into());
            }
            last = g.scope.len();
            let need = g.scope.len() * g.group.len() / e.n();
            if g.available != g.scope.difference(taken) || g.available.len() < need {
                return Err(format!(
                    "group {} found only {} free rounds, needs {need}",
                    g.group,
                    g.available.len()
                ));
            }
            if g.rounds.len() != need || !g.rounds.is_subset(g.available) || g.assignment.rounds() != g.rounds {
                return Err(format!("group {} claimed an invalid round set {}", g.group, g.rounds));
            }
            taken = taken.union(g.rounds);
        }
        Ok(())
    }
}

pub fn gcr(e: &TemporalElection) -> Result<(Outcome, GcrTrace)> {
    gcr_with(&Analysis::new(e, Limits::default()))
}

/// GCR sharing the memo tables of `analysis`.
pub fn gcr_with(analysis: &Analysis<'_>) -> Result<(Outcome, GcrTrace)> {
    let e = analysis.election();
    analysis.ensure_size("greedy cohesive rule")?;
    analysis.ensure_work("greedy cohesive rule", analysis.table_work(Guarantee::Standard))?;

    let mut remaining = e.voters();
    let mut created: Vec<(VoterSet, RoundSet, u32)> = Vec::new();
    while !remaining.is_empty() {
        let candidates: Vec<u64> = remaining.subsets().filter(|&b| b != 0).collect();
        let values: Vec<u32> = candidates
            .par_iter()
            .map(|&b| analysis.guarantee(VoterSet::from_bits(b), Guarantee::Standard))
            .collect();
        let (group, value) = candidates
            .iter()
            .zip(&values)
            .map(|(&b, &v)| (VoterSet::from_bits(b), v))
            .fold(None::<(VoterSet, u32)>, |best, (s, v)| match best {
                Some((bs, bv)) if (bv, bs.len()) >= (v, s.len()) => Some((bs, bv)),
                _ => Some((s, v)),
            })
            .expect("remaining voters form a non-empty group");
        let scope = e
            .rounds()
            .subsets()
            .map(RoundSet::from_bits)
            .filter(|&t| analysis.mu(group, t, false) == value)
            .min_by_key(|t| t.len())
            .expect("the demand is attained by some scope");
        created.push((group, scope, value));
        remaining = remaining.difference(group);
    }

    let mut order: Vec<usize> = (0..created.len()).collect();
    order.sort_by_key(|&k| created[k].1.len());

    let mut outcome = Outcome::constant(FILLER, e.ell());
    let mut free = e.rounds();
    let mut groups: Vec<Option<GcrGroup>> = vec![None; created.len()];
    for &k in &order {
        let (group, scope, value) = created[k];
        let available = scope.intersection(free);
        let need = analysis.share(group, scope.len(), false);
        assert!(
            available.len() >= need,
            "group {group} has {} free rounds in {scope}, needs {need}",
            available.len()
        );
        let rounds = available.lowest(need);
        let (_, assignment) = analysis.best_suboutcome(group, rounds);
        for (r, c) in assignment.iter() {
            outcome.set(r, c);
        }
        free = free.difference(rounds);
        groups[k] = Some(GcrGroup {
            group,
            scope,
            value,
            available,
            rounds,
            assignment,
        });
    }
    let trace = GcrTrace {
        groups: groups.into_iter().map(|g| g.expect("every group is served")).collect(),
        order,
    };
    Ok((outcome, trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_against_one_single_round() {
        let e = TemporalElection::new(
            vec!["c1".into(), "c2".into()],
            vec![vec![vec![0]], vec![vec![0]], vec![vec![1]]],
        )
        .unwrap();
        let (o, trace) = gcr(&e).unwrap();
        assert_eq!(o.picks(), &[0]);
        assert_eq!(trace.groups.len(), 1);
        assert_eq!(trace.groups[0].group, e.voters());
        assert_eq!(trace.groups[0].value, 0);
        trace.verify(&e).unwrap();
    }

    #[test]
    fn unanimous_voters_get_every_round() {
        let e = TemporalElection::new(vec!["a".into(), "b".into()], vec![vec![vec![1]; 3]; 2]).unwrap();
        let (o, trace) = gcr(&e).unwrap();
        assert_eq!(o.picks(), &[1, 1, 1]);
        assert_eq!(trace.replay(3), o);
        trace.verify(&e).unwrap();
    }

    #[test]
    fn grand_coalition_wins_ties() {
        // Singletons and the pair are both owed one round each; the pair is larger.
        let e = TemporalElection::new(
            vec!["a".into(), "b".into()],
            vec![vec![vec![0], vec![0]], vec![vec![1], vec![1]]],
        )
        .unwrap();
        let (o, trace) = gcr(&e).unwrap();
        trace.verify(&e).unwrap();
        assert_eq!(trace.groups.len(), 1);
        assert_eq!(trace.groups[0].scope, e.rounds());
        let sat: Vec<usize> = (0..2).map(|i| e.voter_coverage(i, &o).len()).collect();
        assert_eq!(sat, vec![1, 1]);
    }
}
